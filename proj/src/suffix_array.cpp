#include "bwtk/suffix_array.hpp"

#include <algorithm>
#include <cstdint>

namespace bwtk {

namespace detail {

namespace {

// Induced sorting (Nong, Zhang & Chan). `sa` has length n, `s` is the text
// with a unique smallest sentinel at n-1, `k` the alphabet size.
template <typename Char>
void sais_rec(const Char* s, std::int32_t* sa, std::int32_t n, std::int32_t k) {
    std::vector<bool> stype(static_cast<std::size_t>(n));
    stype[n - 1] = true;
    for (std::int32_t i = n - 2; i >= 0; --i)
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    auto is_lms = [&](std::int32_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<std::int32_t> bucket(static_cast<std::size_t>(k));
    auto load_buckets = [&](bool ends) {
        std::fill(bucket.begin(), bucket.end(), 0);
        for (std::int32_t i = 0; i < n; ++i) ++bucket[s[i]];
        std::int32_t sum = 0;
        for (std::int32_t c = 0; c < k; ++c) {
            sum += bucket[c];
            bucket[c] = ends ? sum : sum - bucket[c];
        }
    };
    auto induce = [&]() {
        load_buckets(false);
        for (std::int32_t i = 0; i < n; ++i) {
            std::int32_t j = sa[i] - 1;
            if (sa[i] > 0 && !stype[j]) sa[bucket[s[j]]++] = j;
        }
        load_buckets(true);
        for (std::int32_t i = n - 1; i >= 0; --i) {
            std::int32_t j = sa[i] - 1;
            if (sa[i] > 0 && stype[j]) sa[--bucket[s[j]]] = j;
        }
    };

    std::fill(sa, sa + n, -1);
    load_buckets(true);
    for (std::int32_t i = 1; i < n; ++i)
        if (is_lms(i)) sa[--bucket[s[i]]] = i;
    induce();

    std::int32_t n1 = 0;
    for (std::int32_t i = 0; i < n; ++i)
        if (is_lms(sa[i])) sa[n1++] = sa[i];

    std::fill(sa + n1, sa + n, -1);
    std::int32_t names = 0;
    std::int32_t prev = -1;
    for (std::int32_t i = 0; i < n1; ++i) {
        std::int32_t pos = sa[i];
        bool diff = false;
        for (std::int32_t d = 0; d < n; ++d) {
            if (prev == -1 || s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
                diff = true;
                break;
            }
            if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
        }
        if (diff) {
            ++names;
            prev = pos;
        }
        sa[n1 + pos / 2] = names - 1;
    }
    for (std::int32_t i = n - 1, j = n - 1; i >= n1; --i)
        if (sa[i] >= 0) sa[j--] = sa[i];

    std::int32_t* reduced = sa + n - n1;
    if (names < n1) {
        sais_rec(reduced, sa, n1, names);
    } else {
        for (std::int32_t i = 0; i < n1; ++i) sa[reduced[i]] = i;
    }

    for (std::int32_t i = 1, j = 0; i < n; ++i)
        if (is_lms(i)) reduced[j++] = i;
    for (std::int32_t i = 0; i < n1; ++i) sa[i] = reduced[sa[i]];
    std::fill(sa + n1, sa + n, -1);
    load_buckets(true);
    for (std::int32_t i = n1 - 1; i >= 0; --i) {
        std::int32_t j = sa[i];
        sa[i] = -1;
        sa[--bucket[s[j]]] = j;
    }
    induce();
}

}  // namespace

std::vector<std::int32_t> sais(const std::vector<std::int32_t>& text, std::int32_t alphabet) {
    std::vector<std::int32_t> sa(text.size());
    if (text.size() == 1) {
        sa[0] = 0;
        return sa;
    }
    sais_rec(text.data(), sa.data(), static_cast<std::int32_t>(text.size()), alphabet);
    return sa;
}

}  // namespace detail

std::vector<Pos> suffix_array(const Sequence& seq) {
    if (seq.symbols.empty()) throw InvalidArgument("suffix_array: empty sequence");
    if (seq.symbols.size() >= static_cast<std::size_t>(INT32_MAX))
        throw InvalidArgument("suffix_array: sequence too long");

    std::vector<std::int32_t> text(seq.symbols.begin(), seq.symbols.end());
    text.push_back(0);
    auto sa = detail::sais(text, static_cast<std::int32_t>(seq.sigma + 1));

    std::vector<Pos> out(sa.size());
    std::transform(sa.begin(), sa.end(), out.begin(),
                   [](std::int32_t p) { return static_cast<Pos>(p) + 1; });
    return out;
}

}  // namespace bwtk
