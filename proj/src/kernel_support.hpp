#pragma once

#include <cmath>
#include <cstddef>

#include "bwtk/enumerate.hpp"
#include "bwtk/kernels.hpp"

namespace bwtk::detail {

using Wide = __int128;

inline long double to_real(Wide v) { return static_cast<long double>(v); }

/// Right extensions of W other than the terminator (always first if present).
inline std::span<const Symbol> real_chars(const ReprView& r) {
    if (r.present() && r.chars.front() == kTerminator) return r.chars.subspan(1);
    return r.chars;
}

inline std::size_t real_degree(const ReprView& r) { return real_chars(r).size(); }

/// f(Wb) for the j-th real right extension.
inline Pos real_frequency(const ReprView& r, std::size_t j) {
    std::size_t skip = r.chars.size() - real_chars(r).size();
    return r.frequency(j + skip);
}

/// Occurrences of W in T; the root interval also holds the terminator row.
inline Pos occurrences(const ReprView& r, std::size_t depth) {
    Pos f = r.frequency();
    return depth == 0 && f ? f - 1 : f;
}

/// Sum over children (terminator leaves included) of f(child)^2.
inline Wide child_squares(const ReprView& r) {
    Wide s = 0;
    for (std::size_t j = 0; j < r.degree(); ++j) s += Wide(r.frequency(j)) * r.frequency(j);
    return s;
}

/// Calls f(b, f1(Wb), f2(Wb)) for each real b extending W in both strings.
template <typename F>
void for_shared_children(const ReprView& r1, const ReprView& r2, F&& f) {
    auto c1 = real_chars(r1), c2 = real_chars(r2);
    std::size_t s1 = r1.chars.size() - c1.size(), s2 = r2.chars.size() - c2.size();
    std::size_t i = 0, j = 0;
    while (i < c1.size() && j < c2.size()) {
        if (c1[i] < c2[j]) {
            ++i;
        } else if (c2[j] < c1[i]) {
            ++j;
        } else {
            f(c1[i], r1.frequency(i + s1), r2.frequency(j + s2));
            ++i;
            ++j;
        }
    }
}

inline Wide shared_products(const ReprView& r1, const ReprView& r2) {
    Wide s = 0;
    for_shared_children(r1, r2, [&](Symbol, Pos a, Pos b) { s += Wide(a) * b; });
    return s;
}

inline void require_k_range(std::size_t k1, std::size_t k2, std::size_t min) {
    if (k1 < min || k1 > k2)
        throw InvalidArgument("invalid k range [" + std::to_string(k1) + ".." + std::to_string(k2) + "]");
}

inline void require_shared_alphabet(const FmIndex& a, const FmIndex& b) {
    if (a.sigma() != b.sigma()) throw InvalidArgument("sequences use different alphabet sizes");
}

}  // namespace bwtk::detail
