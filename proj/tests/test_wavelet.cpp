#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "bwtk/bwt_index.hpp"
#include "bwtk/wavelet_matrix.hpp"
#include "test_support.hpp"

using namespace bwtk;

namespace {

// "bb#aa": the BWT of abab#, with a=1, b=2, #=0.
FmIndex abab_index() { return FmIndex(sequence_from_string("abab")); }

std::size_t naive_rank(const std::vector<Symbol>& v, Symbol c, std::size_t i) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < i; ++k) r += v[k] == c;
    return r;
}

}  // namespace

TEST_CASE("rank examples") {
    auto fm = abab_index();
    CHECK(fm.rank(1, 5) == 2);
    CHECK(fm.rank(2, 2) == 2);
    for (Symbol c = 0; c <= 2; ++c) CHECK(fm.rank(c, 0) == 0);
    CHECK_THROWS_AS(fm.rank(3, 1), InvalidArgument);
    CHECK_THROWS_AS(fm.rank(1, 6), InvalidArgument);
}

TEST_CASE("access examples") {
    auto fm = abab_index();
    CHECK(fm.access(3) == 0);
    auto banana = FmIndex(sequence_from_string("banana"));  // annb#aa
    CHECK(banana.access(1) == 1);
    CHECK_THROWS_AS(fm.access(6), InvalidArgument);
    CHECK_THROWS_AS(fm.access(0), InvalidArgument);
}

TEST_CASE("range_distinct examples") {
    // "banana" itself as the indexed array: a=1, b=2, n=3
    std::vector<Symbol> banana{2, 1, 3, 1, 3, 1};
    WaveletMatrix wm(banana, 3);
    std::vector<DistinctSymbol> got;
    wm.range_distinct(0, 6, [&](Symbol c, std::size_t before, std::size_t count) {
        got.push_back({c, before + 1, before + count});
    });
    CHECK(got == std::vector<DistinctSymbol>{{1, 1, 3}, {2, 1, 1}, {3, 1, 2}});

    auto fm = abab_index();
    CHECK(fm.range_distinct(1, 5) == std::vector<DistinctSymbol>{{0, 1, 1}, {1, 1, 2}, {2, 1, 2}});
    CHECK(fm.range_distinct(4, 4) == std::vector<DistinctSymbol>{{1, 1, 1}});
    CHECK(fm.range_distinct(2, 2) == std::vector<DistinctSymbol>{{2, 2, 2}});
    CHECK_THROWS_AS(fm.range_distinct(3, 2), InvalidArgument);
    CHECK_THROWS_AS(fm.range_distinct(0, 2), InvalidArgument);
    CHECK_THROWS_AS(fm.range_distinct(1, 6), InvalidArgument);
}

TEST_CASE("wavelet matrix agrees with naive scans on random arrays") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        std::uniform_int_distribution<int> len_d(1, 700);
        std::uniform_int_distribution<int> sig_d(1, iter % 10 == 0 ? 256 : 9);
        const std::size_t len = static_cast<std::size_t>(len_d(rng));
        const auto max_symbol = static_cast<Symbol>(sig_d(rng));
        std::uniform_int_distribution<int> val(0, max_symbol);
        std::vector<Symbol> v(len);
        for (auto& x : v) x = static_cast<Symbol>(val(rng));
        WaveletMatrix wm(v, max_symbol);

        for (std::size_t i = 0; i < len; ++i) REQUIRE(wm.access(i) == v[i]);
        std::uniform_int_distribution<std::size_t> pos(0, len);
        for (int q = 0; q < 20; ++q) {
            std::size_t i = pos(rng);
            Symbol c = static_cast<Symbol>(val(rng));
            REQUIRE(wm.rank(c, i) == naive_rank(v, c, i));
        }
        for (int q = 0; q < 20; ++q) {
            std::size_t b = pos(rng), e = pos(rng);
            if (b > e) std::swap(b, e);
            if (b == e) continue;
            std::map<Symbol, std::pair<std::size_t, std::size_t>> expect;
            for (std::size_t k = b; k < e; ++k) {
                auto [it, fresh] = expect.try_emplace(v[k], naive_rank(v, v[k], k + 1), 0);
                it->second.second = naive_rank(v, v[k], k + 1);
            }
            std::vector<DistinctSymbol> got;
            std::size_t covered = 0;
            wm.range_distinct(b, e, [&](Symbol c, std::size_t before, std::size_t count) {
                got.push_back({c, before + 1, before + count});
                covered += count;
            });
            REQUIRE(got.size() == expect.size());
            std::size_t k = 0;
            for (const auto& [c, ranks] : expect) {
                CHECK(got[k].c == c);
                CHECK(got[k].rank_first == ranks.first);
                CHECK(got[k].rank_last == ranks.second);
                ++k;
            }
            CHECK(covered == e - b);
        }
    }
}

TEST_CASE("rank bitvector across block boundaries") {
    std::mt19937_64 rng(23);
    for (std::size_t size : {1u, 63u, 64u, 65u, 511u, 512u, 513u, 5000u}) {
        std::vector<std::uint64_t> words(size / 64 + 1);
        std::vector<bool> bits(size);
        for (std::size_t i = 0; i < size; ++i) {
            bits[i] = rng() & 1;
            if (bits[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        RankBitVector bv(words, size);
        std::size_t ones = 0;
        for (std::size_t i = 0; i <= size; ++i) {
            REQUIRE(bv.rank1(i) == ones);
            if (i < size) {
                CHECK(bv[i] == bits[i]);
                ones += bits[i];
            }
        }
    }
}
