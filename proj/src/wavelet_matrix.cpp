#include "bwtk/wavelet_matrix.hpp"

#include <bit>

namespace bwtk {

WaveletMatrix::WaveletMatrix(std::span<const Symbol> values, Symbol max_symbol)
    : size_(values.size()), max_symbol_(max_symbol) {
    const std::size_t depth = std::max<std::size_t>(1, std::bit_width(static_cast<unsigned>(max_symbol)));
    std::vector<Symbol> cur(values.begin(), values.end());
    std::vector<Symbol> next(cur.size());
    levels_.reserve(depth);
    zeros_.reserve(depth);
    for (std::size_t level = 0; level < depth; ++level) {
        const std::size_t bit = depth - 1 - level;
        std::vector<std::uint64_t> words(cur.size() / 64 + 1, 0);
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if ((cur[i] >> bit) & 1u) words[i >> 6] |= std::uint64_t{1} << (i & 63);
            else ++zeros;
        }
        std::size_t z = 0, o = zeros;
        for (Symbol v : cur) {
            if ((v >> bit) & 1u) next[o++] = v;
            else next[z++] = v;
        }
        levels_.emplace_back(std::move(words), cur.size());
        zeros_.push_back(zeros);
        cur.swap(next);
    }

    leaf_start_.assign(static_cast<std::size_t>(max_symbol) + 1, 0);
    for (std::size_t c = 0; c <= max_symbol; ++c) {
        std::size_t p = 0;
        for (std::size_t level = 0; level < depth; ++level) {
            const std::size_t bit = depth - 1 - level;
            p = ((c >> bit) & 1u) ? zeros_[level] + levels_[level].rank1(p) : levels_[level].rank0(p);
        }
        leaf_start_[c] = p;
    }
}

Symbol WaveletMatrix::access(std::size_t i) const {
    Symbol c = 0;
    for (std::size_t level = 0; level < levels_.size(); ++level) {
        const RankBitVector& bv = levels_[level];
        if (bv[i]) {
            c = static_cast<Symbol>((c << 1) | 1u);
            i = zeros_[level] + bv.rank1(i);
        } else {
            c = static_cast<Symbol>(c << 1);
            i = bv.rank0(i);
        }
    }
    return c;
}

std::size_t WaveletMatrix::rank(Symbol c, std::size_t i) const {
    if (c > max_symbol_) return 0;
    const std::size_t depth = levels_.size();
    for (std::size_t level = 0; level < depth; ++level) {
        const std::size_t bit = depth - 1 - level;
        const RankBitVector& bv = levels_[level];
        i = ((c >> bit) & 1u) ? zeros_[level] + bv.rank1(i) : bv.rank0(i);
    }
    return i - leaf_start_[c];
}

std::size_t WaveletMatrix::bytes() const {
    std::size_t total = leaf_start_.size() * sizeof(std::size_t);
    for (const auto& bv : levels_) total += bv.bytes();
    return total;
}

}  // namespace bwtk
