#include <cmath>
#include <numbers>
#include <numeric>

#include "kernel_support.hpp"

namespace bwtk {

using detail::Wide;

namespace {

/// g(m, len) - 1 = 1 / ((m - len + 1)(m - len + 3)) for a string of m symbols.
long double g_minus_one(std::size_t m, std::size_t len) {
    if (len > m) return 0;
    const long double x = static_cast<long double>(m - len);
    return 1.0L / ((x + 1) * (x + 3));
}

/// f(aWb) f(W) / (f(aW) f(Wb)) as an exact fraction.
struct Ratio {
    Wide num;
    Wide den;

    bool one() const { return num == den; }
    long double minus_one() const { return detail::to_real(num - den) / detail::to_real(den); }
    long double value() const { return detail::to_real(num) / detail::to_real(den); }
};

Ratio ratio(Pos f_awb, Pos f_w, Pos f_aw, Pos f_wb) { return {Wide(f_awb) * f_w, Wide(f_aw) * f_wb}; }

struct MarkovSums {
    long double shared = 0;  // sum over lengths 2..|W| of gamma1 * gamma2
    long double own[2] = {0, 0};  // sum over lengths 2..|W| of gamma_i^2
};

}  // namespace

double markov_kernel(const FmIndex& t1, const FmIndex& t2, const ZScoreParams& params) {
    detail::require_shared_alphabet(t1, t2);
    const bool exact = params.g_mode == GMode::exact;
    const std::array<std::size_t, 2> m{t1.text_length(), t2.text_length()};
    // z of an occurring aWb whose infix is not a maximal repeat
    auto gamma = [&](std::size_t side, std::size_t len) { return exact ? g_minus_one(m[side], len) : 0.0L; };

    long double n = 0;
    std::array<long double, 2> d{0, 0};
    if (exact) {
        // leaves: every suffix contributes the sum over its prefixes
        for (std::size_t s = 0; s < 2; ++s) {
            long double ps = 0;
            for (std::size_t len = 2; len <= m[s]; ++len) {
                const long double g = gamma(s, len);
                ps += g * g;
                d[s] += ps;
            }
        }
    }

    const std::size_t sigma = t1.sigma();
    // state[s][b]: 0 none, 1 aWb occurs, 2 aWb is a minimal absent word
    std::array<std::vector<char>, 2> state{std::vector<char>(sigma + 1, 0), std::vector<char>(sigma + 1, 0)};
    std::array<std::vector<long double>, 2> z{std::vector<long double>(sigma + 1), std::vector<long double>(sigma + 1)};

    SuffixLinkTreeWalker<2, MarkovSums> walker({&t1, &t2});
    walker.run([&](const auto& v) {
        const std::size_t depth = v.depth();
        const std::size_t len = depth + 2;
        const MarkovSums& sums = v.payload();
        const ReprView& w1 = v.repr(0);
        const ReprView& w2 = v.repr(1);
        const std::array<const ReprView*, 2> w{&w1, &w2};

        // baseline: every occurring substring of length >= 2 scores gamma
        if (exact) {
            for (std::size_t s = 0; s < 2; ++s)
                if (w[s]->present())
                    d[s] += sums.own[s] * (1.0L - static_cast<long double>(w[s]->degree()));
            if (w1.present() && w2.present()) {
                std::size_t both = 0;
                detail::for_shared_children(w1, w2, [&](Symbol, Pos, Pos) { ++both; });
                n += sums.shared * (1.0L - static_cast<long double>(both));
            }
        }

        for (std::size_t i = 0; i < v.left_count(); ++i) {
            const Symbol a = v.left()[i];
            if (a == kTerminator) continue;
            const auto& ext = v.extension(i);

            for (std::size_t s = 0; s < 2; ++s) {
                if (!ext[s].present()) continue;
                const Pos f_w = detail::occurrences(*w[s], depth);
                const Pos f_aw = ext[s].frequency();
                const long double g = gamma(s, len);
                for (Symbol b : detail::real_chars(*w[s])) state[s][b] = 2;
                for (Symbol b : detail::real_chars(ext[s])) {
                    Ratio r = ratio(ext[s].frequency_of(b), f_w, f_aw, w[s]->frequency_of(b));
                    state[s][b] = 1;
                    z[s][b] = r.one() ? g : r.minus_one() + g * r.value();
                }
                for (Symbol b : detail::real_chars(*w[s])) {
                    if (state[s][b] == 1)
                        d[s] += z[s][b] * z[s][b] - g * g;
                    else
                        d[s] += 1;
                }
            }

            if (ext[0].present() && ext[1].present()) {
                const long double gg = gamma(0, len) * gamma(1, len);
                detail::for_shared_children(w1, w2, [&](Symbol b, Pos, Pos) {
                    const char s1 = state[0][b], s2 = state[1][b];
                    if (s1 == 1 && s2 == 1)
                        n += z[0][b] * z[1][b] - gg;
                    else if (s1 == 1)
                        n -= z[0][b];
                    else if (s2 == 1)
                        n -= z[1][b];
                    else
                        n += 1;
                });
            }

            for (std::size_t s = 0; s < 2; ++s)
                for (Symbol b : detail::real_chars(*w[s])) state[s][b] = 0;

            MarkovSums& child = v.child_payload(i);
            child = sums;
            if (exact && depth + 1 >= 2) {
                const long double g1 = gamma(0, depth + 1), g2 = gamma(1, depth + 1);
                child.shared += g1 * g2;
                child.own[0] += g1 * g1;
                child.own[1] += g2 * g2;
            }
        }
    });
    return KernelAccumulator{n, d[0], d[1]}.value("z-score vector is zero");
}

std::vector<double> kl_divergence_range(const FmIndex& t, std::size_t k1, std::size_t k2) {
    detail::require_k_range(k1, k2, 2);
    const std::size_t m = t.text_length();
    std::vector<long double> kl(k2 - k1 + 1, 0);

    // only aWb with W a maximal repeat can have f(aWb) f(W) != f(aW) f(Wb)
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        const std::size_t len = v.depth() + 2;
        if (len < k1 || len > k2 || len > m) return;
        const ReprView& w = v.repr();
        const Pos f_w = detail::occurrences(w, v.depth());
        long double sum = 0;
        for (std::size_t i = 0; i < v.left_count(); ++i) {
            if (v.left()[i] == kTerminator) continue;
            const ReprView& aw = v.extension(i)[0];
            for (Symbol b : detail::real_chars(aw)) {
                const Pos f_awb = aw.frequency_of(b);
                Ratio r = ratio(f_awb, f_w, aw.frequency(), w.frequency_of(b));
                if (!r.one()) sum += static_cast<long double>(f_awb) * std::log1p(r.minus_one());
            }
        }
        kl[len - k1] += sum / static_cast<long double>(t.n() - len);
    });

    std::vector<double> out;
    for (std::size_t k = k1; k <= k2; ++k) {
        long double value = kl[k - k1];
        // the k-mer probabilities sum to one, each scaled by g(m, k)
        if (k <= m) value += std::log1p(g_minus_one(m, k));
        out.push_back(static_cast<double>(value / std::numbers::ln2_v<long double>));
    }
    return out;
}

std::int64_t calibrate_kmax(const FmIndex& t, double tau, std::size_t kcap) {
    if (!(tau > 0)) throw InvalidArgument("tau must be > 0");
    if (kcap < 2) throw InvalidArgument("kcap must be >= 2");
    auto kl = kl_divergence_range(t, 2, kcap);
    // tails[k] = sum over [k..kcap]
    std::vector<long double> tails(kl.size() + 1, 0);
    for (std::size_t i = kl.size(); i-- > 0;) tails[i] = tails[i + 1] + kl[i];
    for (std::size_t i = 0; i < kl.size(); ++i)
        if (tails[i] < tau) return static_cast<std::int64_t>(i + 2);
    return static_cast<std::int64_t>(kcap + 1);
}

}  // namespace bwtk
