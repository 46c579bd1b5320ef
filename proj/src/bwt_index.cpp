#include "bwtk/bwt_index.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "bwtk/suffix_array.hpp"

namespace bwtk {

namespace {

constexpr std::array<char, 5> kMagic{'B', 'W', 'T', 'K', '1'};

unsigned code_width(std::size_t sigma) {
    return static_cast<unsigned>(std::bit_width(sigma));  // == ceil(log2(sigma + 1))
}

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw InputError("truncated BWTK1 header");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

BwtIndex bwt_from_symbols(std::vector<Symbol> bwt, std::size_t sigma) {
    if (sigma == 0 || sigma > kMaxSigma) throw InputError("sigma out of range");
    if (bwt.size() < 2) throw InputError("bwt must hold at least one symbol and the terminator");
    BwtIndex index;
    index.n = bwt.size();
    index.sigma = sigma;
    index.c.assign(sigma + 2, 0);
    std::size_t terminators = 0;
    for (Symbol s : bwt) {
        if (s > sigma) throw InputError("bwt symbol exceeds sigma");
        if (s == kTerminator) ++terminators;
        ++index.c[s + 1];
    }
    if (terminators != 1) throw InputError("bwt must contain exactly one terminator");
    for (std::size_t a = 1; a < index.c.size(); ++a) index.c[a] += index.c[a - 1];
    index.bwt = std::move(bwt);
    return index;
}

BwtIndex build_bwt(const Sequence& seq) {
    if (seq.symbols.empty()) throw InvalidArgument("build_bwt: empty sequence");
    const auto sa = suffix_array(seq);
    std::vector<Symbol> bwt(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i)
        bwt[i] = sa[i] == 1 ? kTerminator : seq.symbols[sa[i] - 2];
    return bwt_from_symbols(std::move(bwt), seq.sigma);
}

void write_bwt(std::ostream& out, const BwtIndex& index) {
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, index.n);
    put_u64(out, index.sigma);
    const unsigned w = code_width(index.sigma);
    std::vector<unsigned char> packed((index.n * w + 7) / 8, 0);
    std::size_t bit = 0;
    for (Symbol s : index.bwt) {
        for (unsigned b = 0; b < w; ++b, ++bit)
            if ((s >> b) & 1u) packed[bit >> 3] |= static_cast<unsigned char>(1u << (bit & 7));
    }
    out.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (!out) throw InputError("failed writing BWTK1 data");
}

BwtIndex read_bwt(std::istream& in) {
    std::array<char, 5> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw InputError("missing BWTK1 magic");
    const std::uint64_t n = get_u64(in);
    const std::uint64_t sigma = get_u64(in);
    if (sigma == 0 || sigma > kMaxSigma) throw InputError("BWTK1 sigma out of range");
    if (n < 2 || n > (std::uint64_t{1} << 40)) throw InputError("BWTK1 length out of range");
    const unsigned w = code_width(sigma);
    std::vector<unsigned char> packed((n * w + 7) / 8);
    in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (!in) throw InputError("truncated BWTK1 payload");
    std::vector<Symbol> bwt(n);
    std::size_t bit = 0;
    for (auto& s : bwt) {
        unsigned v = 0;
        for (unsigned b = 0; b < w; ++b, ++bit) v |= ((packed[bit >> 3] >> (bit & 7)) & 1u) << b;
        s = static_cast<Symbol>(v);
    }
    return bwt_from_symbols(std::move(bwt), sigma);
}

void save_bwt(const std::filesystem::path& path, const BwtIndex& index) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    write_bwt(out, index);
}

BwtIndex load_bwt(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    return read_bwt(in);
}

bool has_bwt_magic(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::array<char, 5> magic{};
    in.read(magic.data(), magic.size());
    return in && magic == kMagic;
}

FmIndex::FmIndex(BwtIndex bwt)
    : bwt_(std::move(bwt)), wm_(bwt_.bwt, static_cast<Symbol>(bwt_.sigma)) {}

Symbol FmIndex::access(Pos i) const {
    if (i < 1 || i > bwt_.n) throw InvalidArgument("access: row out of range");
    return wm_.access(i - 1);
}

Pos FmIndex::rank(Symbol c, Pos i) const {
    if (c > bwt_.sigma) throw InvalidArgument("rank: symbol outside [0..sigma]");
    if (i > bwt_.n) throw InvalidArgument("rank: position out of range");
    return wm_.rank(c, i);
}

std::vector<DistinctSymbol> FmIndex::range_distinct(Pos i, Pos j) const {
    if (i < 1 || i > j || j > bwt_.n) throw InvalidArgument("range_distinct: empty or invalid range");
    std::vector<DistinctSymbol> out;
    range_distinct(i, j, [&](const DistinctSymbol& d) { out.push_back(d); });
    return out;
}

Pos FmIndex::lf(Pos i) const {
    Symbol s = access(i);
    return bwt_.c[s] + wm_.rank(s, i);
}

}  // namespace bwtk
