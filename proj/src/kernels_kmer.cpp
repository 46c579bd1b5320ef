#include <algorithm>
#include <cmath>

#include "kernel_support.hpp"

namespace bwtk {

using detail::Wide;

double KernelAccumulator::value(const std::string& what) const {
    if (D1 <= 0 || D2 <= 0) throw ZeroDenominator(what);
    return static_cast<double>(N / std::sqrt(D1 * D2));
}

std::int64_t kmer_complexity(const FmIndex& t, std::size_t k) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    Wide c = k < t.n() ? Wide(t.n() - k) : 0;
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        if (v.depth() >= k) c += 1 - Wide(v.repr().degree());
    });
    return static_cast<std::int64_t>(c);
}

KernelSeries kmer_kernel_range(const FmIndex& t1, const FmIndex& t2, std::size_t k1, std::size_t k2) {
    detail::require_k_range(k1, k2, 1);
    detail::require_shared_alphabet(t1, t2);
    const std::size_t width = k2 - k1 + 1;
    std::vector<Wide> n(width, 0), d1(width, 0), d2(width, 0);

    enumerate_generalized(t1, t2, [&](const PairWalker::Visit& v) {
        if (v.depth() < k1) return;
        const std::size_t at = std::min(v.depth(), k2) - k1;
        const ReprView& r1 = v.repr(0);
        const ReprView& r2 = v.repr(1);
        const Wide f1 = r1.frequency(), f2 = r2.frequency();
        if (r1.present()) d1[at] += f1 * f1 - detail::child_squares(r1);
        if (r2.present()) d2[at] += f2 * f2 - detail::child_squares(r2);
        if (r1.present() && r2.present()) n[at] += f1 * f2 - detail::shared_products(r1, r2);
    });

    KernelSeries out(width);
    Wide sn = 0, s1 = 0, s2 = 0;
    for (std::size_t i = width; i-- > 0;) {
        sn += n[i];
        s1 += d1[i];
        s2 += d2[i];
        const std::size_t k = k1 + i;
        // leaves: every suffix with at least k symbols
        Wide l1 = k < t1.n() ? Wide(t1.n() - k) : 0;
        Wide l2 = k < t2.n() ? Wide(t2.n() - k) : 0;
        KernelAccumulator acc{detail::to_real(sn), detail::to_real(s1 + l1), detail::to_real(s2 + l2)};
        if (acc.D1 > 0 && acc.D2 > 0) out[i] = acc.value();
    }
    return out;
}

double kmer_kernel(const FmIndex& t1, const FmIndex& t2, std::size_t k) {
    auto v = kmer_kernel_range(t1, t2, k, k);
    if (!v[0]) throw ZeroDenominator("sequence shorter than k = " + std::to_string(k));
    return *v[0];
}

ProfileMatrix kmer_profile(const FmIndex& t, std::size_t k1, std::size_t k2, std::size_t f1, std::size_t f2) {
    detail::require_k_range(k1, k2, 1);
    if (f1 < 1 || f1 > f2)
        throw InvalidArgument("invalid f range [" + std::to_string(f1) + ".." + std::to_string(f2) + "]");
    ProfileMatrix diff(k1, k2, f1, f2);
    auto bump = [&](std::size_t k, Pos f, std::int64_t by) {
        if (f < f1) return;
        diff.at(k, std::min<std::size_t>(f, f2)) += by;
    };
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        if (v.depth() < k1) return;
        const std::size_t k = std::min(v.depth(), k2);
        const ReprView& r = v.repr();
        bump(k, r.frequency(), 1);
        for (std::size_t j = 0; j < r.degree(); ++j) bump(k, r.frequency(j), -1);
    });

    ProfileMatrix out(k1, k2, f1, f2);
    std::vector<std::int64_t> running(out.columns(), 0);
    for (std::size_t k = k2; k >= k1; --k) {
        for (std::size_t f = f1; f <= f2; ++f) {
            running[f - f1] += diff.at(k, f);
            out.at(k, f) = running[f - f1];
        }
        if (f1 == 1 && k < t.n()) out.at(k, 1) += static_cast<std::int64_t>(t.n() - k);
    }
    return out;
}

std::vector<double> entropy_range(const FmIndex& t, std::size_t k1, std::size_t k2) {
    detail::require_k_range(k1, k2, 0);
    std::vector<long double> h(k2 - k1 + 1, 0);
    enumerate_right_maximal(t, [&](const Walker::Visit& v) {
        if (v.depth() < k1 || v.depth() > k2) return;
        const ReprView& r = v.repr();
        const std::size_t k = detail::real_degree(r);
        if (k < 2) return;
        long double total = 0;
        for (std::size_t j = 0; j < k; ++j) total += detail::real_frequency(r, j);
        long double sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
            long double f = detail::real_frequency(r, j);
            sum += f * std::log2(total / f);
        }
        h[v.depth() - k1] += sum;
    });
    const long double m = static_cast<long double>(t.text_length());
    std::vector<double> out;
    for (long double x : h) out.push_back(static_cast<double>(x / m));
    return out;
}

std::int64_t calibrate_kmin(const FmIndex& t, std::size_t kcap) {
    if (kcap < 1) throw InvalidArgument("kcap must be >= 1");
    ProfileMatrix p = kmer_profile(t, 1, kcap, 2, 2);
    std::size_t best = 1;
    for (std::size_t k = 2; k <= kcap; ++k)
        if (p.at(k, 2) > p.at(best, 2)) best = k;
    return static_cast<std::int64_t>(best);
}

}  // namespace bwtk
