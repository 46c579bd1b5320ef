#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bwtk/bit_vector.hpp"
#include "bwtk/types.hpp"

namespace bwtk {

/// Wavelet matrix over symbols [0..max_symbol]. All positions here are
/// 0-based and ranges half-open; FmIndex adapts them to 1-based rows.
class WaveletMatrix {
  public:
    WaveletMatrix() = default;
    WaveletMatrix(std::span<const Symbol> values, Symbol max_symbol);

    std::size_t size() const { return size_; }
    std::size_t levels() const { return levels_.size(); }

    Symbol access(std::size_t i) const;

    /// Occurrences of c in [0, i).
    std::size_t rank(Symbol c, std::size_t i) const;

    /// Calls f(c, occurrences of c before `begin`, occurrences of c in
    /// [begin, end)) once per distinct c in the range, in ascending order of c.
    template <typename F>
    void range_distinct(std::size_t begin, std::size_t end, F&& f) const {
        if (begin < end) descend(0, begin, end, 0, f);
    }

    std::size_t bytes() const;

  private:
    template <typename F>
    void descend(std::size_t level, std::size_t b, std::size_t e, Symbol prefix, F& f) const {
        if (level == levels_.size()) {
            f(prefix, b - leaf_start_[prefix], e - b);
            return;
        }
        const RankBitVector& bv = levels_[level];
        std::size_t ob = bv.rank1(b);
        std::size_t oe = bv.rank1(e);
        std::size_t zb = b - ob;
        std::size_t ze = e - oe;
        auto child = static_cast<Symbol>(prefix << 1);
        if (zb < ze) descend(level + 1, zb, ze, child, f);
        if (ob < oe) descend(level + 1, zeros_[level] + ob, zeros_[level] + oe, child | 1u, f);
    }

    std::vector<RankBitVector> levels_;
    std::vector<std::size_t> zeros_;
    std::vector<std::size_t> leaf_start_;
    std::size_t size_ = 0;
    Symbol max_symbol_ = 0;
};

}  // namespace bwtk
