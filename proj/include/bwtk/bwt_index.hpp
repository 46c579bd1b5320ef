#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "bwtk/text.hpp"
#include "bwtk/types.hpp"
#include "bwtk/wavelet_matrix.hpp"

namespace bwtk {

/// BWT of T# plus the C array. bwt is 0-based storage of rows 1..n.
struct BwtIndex {
    std::vector<Symbol> bwt;
    /// c[a] = number of symbols in bwt strictly smaller than a, a in [0..sigma+1].
    std::vector<Pos> c;
    Pos n = 0;
    std::size_t sigma = 0;
};

BwtIndex build_bwt(const Sequence& seq);

/// Rebuilds the C array and validates the terminator and symbol range.
BwtIndex bwt_from_symbols(std::vector<Symbol> bwt, std::size_t sigma);

/// "BWTK1" magic, n and sigma as u64 little-endian, then bwt packed LSB-first
/// in ceil(log2(sigma+1))-bit codes.
void write_bwt(std::ostream& out, const BwtIndex& index);
BwtIndex read_bwt(std::istream& in);
void save_bwt(const std::filesystem::path& path, const BwtIndex& index);
BwtIndex load_bwt(const std::filesystem::path& path);

/// True when the stream starts with the BWTK1 magic.
bool has_bwt_magic(const std::filesystem::path& path);

/// One entry of a rangeDistinct answer: rank(c, p_c) and rank(c, q_c) for the
/// first and last occurrence of c inside the queried interval.
struct DistinctSymbol {
    Symbol c;
    Pos rank_first;
    Pos rank_last;

    Pos count() const { return rank_last - rank_first + 1; }
    friend bool operator==(const DistinctSymbol&, const DistinctSymbol&) = default;
};

/// BWT, C array and a wavelet matrix (the rank index) over the BWT.
/// Rows are 1-based; rank(c, i) counts c in rows [1..i].
class FmIndex {
  public:
    FmIndex() = default;
    explicit FmIndex(BwtIndex bwt);
    explicit FmIndex(const Sequence& seq) : FmIndex(build_bwt(seq)) {}

    FmIndex(const FmIndex& other) : bwt_(other.bwt_), wm_(other.wm_) {}
    FmIndex(FmIndex&& other) noexcept : bwt_(std::move(other.bwt_)), wm_(std::move(other.wm_)) {}
    FmIndex& operator=(FmIndex other) noexcept {
        std::swap(bwt_, other.bwt_);
        std::swap(wm_, other.wm_);
        return *this;
    }

    const BwtIndex& bwt() const { return bwt_; }
    Pos n() const { return bwt_.n; }
    /// Length of T without the terminator.
    Pos text_length() const { return bwt_.n - 1; }
    std::size_t sigma() const { return bwt_.sigma; }
    Pos c(Symbol a) const { return bwt_.c[a]; }

    Symbol access(Pos i) const;
    Pos rank(Symbol c, Pos i) const;

    /// 1 <= i <= j <= n; f(DistinctSymbol) per distinct symbol, ascending.
    template <typename F>
    void range_distinct(Pos i, Pos j, F&& f) const {
        wm_.range_distinct(i - 1, j, [&](Symbol c, std::size_t before, std::size_t count) {
            f(DistinctSymbol{c, before + 1, before + count});
        });
    }

    std::vector<DistinctSymbol> range_distinct(Pos i, Pos j) const;

    /// LF mapping of row i.
    Pos lf(Pos i) const;

    /// Streams T[n-1], T[n-2], ..., T[1] (the text backwards, no terminator).
    template <typename F>
    void for_each_symbol_backward(F&& f) const {
        Pos row = 1;
        for (Pos k = 0; k + 1 < bwt_.n; ++k) {
            Symbol s = bwt_.bwt[row - 1];
            f(s);
            row = bwt_.c[s] + wm_.rank(s, row);
        }
    }

    /// Number of suffix-link-tree traversals started over this index.
    std::uint64_t traversals() const { return traversals_.load(std::memory_order_relaxed); }
    void note_traversal() const { traversals_.fetch_add(1, std::memory_order_relaxed); }

    std::size_t rank_index_bytes() const { return wm_.bytes(); }

  private:
    BwtIndex bwt_;
    WaveletMatrix wm_;
    mutable std::atomic<std::uint64_t> traversals_{0};
};

}  // namespace bwtk
