#include "bwtk/bit_vector.hpp"

namespace bwtk {

RankBitVector::RankBitVector(std::vector<std::uint64_t> words, std::size_t size)
    : words_(std::move(words)), size_(size) {
    // one spare word so rank1(size) never reads past the end
    words_.resize(size / 64 + 1, 0);
    if (size % 64) words_[size / 64] &= (std::uint64_t{1} << (size % 64)) - 1;
    else words_[size / 64] = 0;

    blocks_.assign(words_.size() / 8 + 1, 0);
    sub_.assign(words_.size(), 0);
    std::uint64_t total = 0;
    std::uint64_t in_block = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (w % 8 == 0) {
            blocks_[w / 8] = total;
            in_block = 0;
        }
        sub_[w] = static_cast<std::uint16_t>(in_block);
        auto ones = static_cast<std::uint64_t>(std::popcount(words_[w]));
        in_block += ones;
        total += ones;
    }
}

}  // namespace bwtk
