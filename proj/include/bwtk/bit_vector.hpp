#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bwtk {

/// Plain bitvector with constant-time rank: one 64-bit cumulative count per
/// 512-bit block plus a 16-bit in-block offset per word.
class RankBitVector {
  public:
    RankBitVector() = default;

    /// `words` holds bits LSB-first; `size` is the number of valid bits.
    RankBitVector(std::vector<std::uint64_t> words, std::size_t size);

    std::size_t size() const { return size_; }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    /// Ones in [0, i).
    std::size_t rank1(std::size_t i) const {
        std::size_t r = blocks_[i >> 9] + sub_[i >> 6];
        if (i & 63) r += std::popcount(words_[i >> 6] & ((std::uint64_t{1} << (i & 63)) - 1));
        return r;
    }

    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    std::size_t bytes() const {
        return words_.size() * 8 + blocks_.size() * 8 + sub_.size() * 2;
    }

  private:
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> blocks_;
    std::vector<std::uint16_t> sub_;
    std::size_t size_ = 0;
};

}  // namespace bwtk
