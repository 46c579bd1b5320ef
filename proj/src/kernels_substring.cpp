#include <cmath>

#include "kernel_support.hpp"

namespace bwtk {

using detail::Wide;

std::int64_t substring_complexity(const FmIndex& t) {
    const Wide m = t.text_length();
    Wide c = m * (m + 1) / 2;
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        c += Wide(v.depth()) * (1 - Wide(v.repr().degree()));
    });
    return static_cast<std::int64_t>(c);
}

double substring_kernel(const FmIndex& t1, const FmIndex& t2) {
    detail::require_shared_alphabet(t1, t2);
    const Wide m1 = t1.text_length(), m2 = t2.text_length();
    Wide n = 0, d1 = m1 * (m1 + 1) / 2, d2 = m2 * (m2 + 1) / 2;
    enumerate_generalized(t1, t2, [&](const PairWalker::Visit& v) {
        const Wide depth = v.depth();
        const ReprView& r1 = v.repr(0);
        const ReprView& r2 = v.repr(1);
        const Wide f1 = r1.frequency(), f2 = r2.frequency();
        if (r1.present()) d1 += depth * (f1 * f1 - detail::child_squares(r1));
        if (r2.present()) d2 += depth * (f2 * f2 - detail::child_squares(r2));
        if (r1.present() && r2.present()) n += depth * (f1 * f2 - detail::shared_products(r1, r2));
    });
    return KernelAccumulator{detail::to_real(n), detail::to_real(d1), detail::to_real(d2)}.value();
}

namespace {

/// g(len)^2 for the length-based weights.
long double length_weight_sq(const WeightSpec& w, std::size_t len) {
    switch (w.kind) {
        case WeightSpec::Kind::uniform:
            return 1;
        case WeightSpec::Kind::exponential:
            return std::pow(static_cast<long double>(w.epsilon), 2.0L * static_cast<long double>(len));
        case WeightSpec::Kind::band:
            return len >= w.kmin && len <= w.kmax ? 1 : 0;
        case WeightSpec::Kind::charscore:
            break;
    }
    return 0;
}

/// Sum over the suffixes of T of prefixSum(suffix): the leaf contribution
/// to the squared norm.
long double leaf_norm(const FmIndex& t, const WeightSpec& w) {
    long double total = 0;
    if (w.kind == WeightSpec::Kind::charscore) {
        long double ps = 0;
        t.for_each_symbol_backward([&](Symbol c) {
            const long double q = w.q[c - 1];
            ps = q * q * (1 + ps);
            total += ps;
        });
    } else {
        long double ps = 0;
        for (std::size_t len = 1; len <= t.text_length(); ++len) {
            ps += length_weight_sq(w, len);
            total += ps;
        }
    }
    return total;
}

}  // namespace

double weighted_substring_kernel(const FmIndex& t1, const FmIndex& t2, const WeightSpec& w) {
    detail::require_shared_alphabet(t1, t2);
    w.validate(t1.sigma());
    KernelAccumulator acc{0, leaf_norm(t1, w), leaf_norm(t2, w)};

    // payload: prefixSum(W), the summed squared weights of the prefixes of W
    SuffixLinkTreeWalker<2, long double> walker({&t1, &t2});
    walker.run([&](const auto& v) {
        const long double ps = v.payload();
        const ReprView& r1 = v.repr(0);
        const ReprView& r2 = v.repr(1);
        const Wide f1 = r1.frequency(), f2 = r2.frequency();
        if (r1.present()) acc.D1 += ps * detail::to_real(f1 * f1 - detail::child_squares(r1));
        if (r2.present()) acc.D2 += ps * detail::to_real(f2 * f2 - detail::child_squares(r2));
        if (r1.present() && r2.present())
            acc.N += ps * detail::to_real(f1 * f2 - detail::shared_products(r1, r2));

        for (std::size_t i = 0; i < v.left_count(); ++i) {
            const Symbol a = v.left()[i];
            if (a == kTerminator) continue;
            if (w.kind == WeightSpec::Kind::charscore) {
                const long double q = w.q[a - 1];
                v.child_payload(i) = q * q * (1 + ps);
            } else {
                v.child_payload(i) = ps + length_weight_sq(w, v.depth() + 1);
            }
        }
    });
    return acc.value("all weights vanish on a sequence");
}

namespace {

enum class D2Kind { shepherd, star };

/// Product of q over every length-k window of T, streamed right to left.
template <typename F>
void for_each_window(const FmIndex& t, std::size_t k, const std::vector<double>& q, F&& f) {
    std::vector<Symbol> ring(k);
    std::size_t seen = 0;
    long double prod = 1;
    t.for_each_symbol_backward([&](Symbol c) {
        const std::size_t slot = seen % k;
        if (seen >= k) prod /= q[ring[slot] - 1];
        ring[slot] = c;
        prod *= q[c - 1];
        ++seen;
        if (seen % 64 == 0) {
            // refresh to keep rounding from drifting
            prod = 1;
            for (std::size_t i = 0; i < std::min(seen, k); ++i) prod *= q[ring[i] - 1];
        }
        if (seen >= k) f(prod);
    });
}

double d2_distance(const FmIndex& t1, const FmIndex& t2, std::size_t k, const std::vector<double>& q,
                   D2Kind kind) {
    detail::require_shared_alphabet(t1, t2);
    if (k < 1) throw InvalidArgument("k must be >= 1");
    validate_probabilities(q, t1.sigma());
    if (t1.text_length() < k || t2.text_length() < k)
        throw ZeroDenominator("sequence shorter than k = " + std::to_string(k));

    const long double e1 = static_cast<long double>(t1.n() - k);
    const long double e2 = static_cast<long double>(t2.n() - k);
    // every W absent from both strings contributes coef * q(W)
    const long double coef = kind == D2Kind::star ? std::sqrt(e1 * e2) : e1 * e2 / std::sqrt(e1 * e1 + e2 * e2);
    const long double norm = std::sqrt(e1 * e2);

    // term for a k-mer with counts (f1, f2) and probability qw, relative to
    // the absent baseline
    auto h = [&](Pos f1, Pos f2, long double qw) -> long double {
        const long double x1 = static_cast<long double>(f1) - e1 * qw;
        const long double x2 = static_cast<long double>(f2) - e2 * qw;
        long double term;
        if (kind == D2Kind::star) {
            term = x1 * x2 / (norm * qw);
        } else {
            const long double d = std::sqrt(x1 * x1 + x2 * x2);
            term = d == 0 ? 0 : x1 * x2 / d;
        }
        return term - coef * qw;
    };

    long double total = 0;
    for_each_window(t1, k, q, [&](long double qw) { total += h(1, 0, qw); });
    for_each_window(t2, k, q, [&](long double qw) { total += h(0, 1, qw); });

    // payload: q of the first min(|W|, k) symbols of W
    SuffixLinkTreeWalker<2, long double> walker({&t1, &t2});
    walker.run(
        [&](const auto& v) {
            const long double qw = v.payload();
            if (v.depth() >= k) {
                const ReprView& r1 = v.repr(0);
                const ReprView& r2 = v.repr(1);
                long double sum = h(r1.frequency(), r2.frequency(), qw);
                // children: real extensions merged across sides, plus one leaf
                // per terminator
                auto c1 = detail::real_chars(r1), c2 = detail::real_chars(r2);
                std::size_t i = 0, j = 0;
                while (i < c1.size() || j < c2.size()) {
                    if (j == c2.size() || (i < c1.size() && c1[i] < c2[j])) {
                        sum -= h(detail::real_frequency(r1, i++), 0, qw);
                    } else if (i == c1.size() || c2[j] < c1[i]) {
                        sum -= h(0, detail::real_frequency(r2, j++), qw);
                    } else {
                        sum -= h(detail::real_frequency(r1, i++), detail::real_frequency(r2, j++), qw);
                    }
                }
                if (r1.present() && r1.chars.front() == kTerminator) sum -= h(1, 0, qw);
                if (r2.present() && r2.chars.front() == kTerminator) sum -= h(0, 1, qw);
                total += sum;
            }
            for (std::size_t i = 0; i < v.left_count(); ++i) {
                const Symbol a = v.left()[i];
                if (a == kTerminator) continue;
                long double child = qw * q[a - 1];
                if (v.depth() >= k) child /= q[v.symbol_at(k) - 1];
                v.child_payload(i) = child;
            }
        },
        1.0L);

    long double qsum = 0;
    for (double x : q) qsum += x;
    total += coef * std::pow(qsum, static_cast<long double>(k));
    return static_cast<double>(total);
}

}  // namespace

double d2s_distance(const FmIndex& t1, const FmIndex& t2, std::size_t k, const std::vector<double>& q) {
    return d2_distance(t1, t2, k, q, D2Kind::shepherd);
}

double d2star_distance(const FmIndex& t1, const FmIndex& t2, std::size_t k, const std::vector<double>& q) {
    return d2_distance(t1, t2, k, q, D2Kind::star);
}

}  // namespace bwtk
