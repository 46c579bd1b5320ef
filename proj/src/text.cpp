#include "bwtk/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bwtk {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\v' || c == '\f';
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s)
        if (!is_space(c)) out.push_back(static_cast<char>(c));
    return out;
}

}  // namespace

AlphabetMap AlphabetMap::from_bytes(std::string_view distinct_bytes) {
    std::array<bool, 256> seen{};
    for (unsigned char b : distinct_bytes) {
        if (seen[b]) throw InvalidArgument("alphabet lists byte " + std::to_string(b) + " twice");
        seen[b] = true;
    }
    AlphabetMap map;
    for (unsigned b = 0; b < 256; ++b) {
        if (!seen[b]) continue;
        map.symbol_to_byte_.push_back(static_cast<unsigned char>(b));
        map.byte_to_symbol_[b] = static_cast<Symbol>(map.symbol_to_byte_.size());
    }
    return map;
}

std::string AlphabetMap::decode(const std::vector<Symbol>& symbols) const {
    std::string out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) out.push_back(static_cast<char>(byte(s)));
    return out;
}

InputFormat detect_format(std::string_view text) {
    for (unsigned char c : text) {
        if (is_space(c)) continue;
        return c == '>' ? InputFormat::fasta : InputFormat::raw;
    }
    return InputFormat::raw;
}

std::vector<RawRecord> parse_input(std::string_view text, InputFormat format) {
    if (strip_spaces(text).empty()) throw InputError("empty input");

    if (format == InputFormat::raw) return {RawRecord{"", strip_spaces(text)}};

    std::vector<RawRecord> records;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.front() == '>') {
            std::string_view header = line.substr(1);
            std::size_t start = 0;
            while (start < header.size() && is_space(header[start])) ++start;
            std::size_t end = start;
            while (end < header.size() && !is_space(header[end])) ++end;
            records.push_back(RawRecord{std::string(header.substr(start, end - start)), {}});
            continue;
        }
        std::string seq = strip_spaces(line);
        if (seq.empty()) continue;
        if (records.empty()) throw InputError("fasta input has sequence data before the first header");
        records.back().bytes += seq;
    }
    if (records.empty()) throw InputError("fasta input has no header");
    return records;
}

std::vector<RawRecord> load_input(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw InputError("cannot read " + path.string());
    try {
        return parse_input(buf.str(), format);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

MappedSequence map_alphabet(std::string_view raw, std::optional<std::string_view> alphabet) {
    if (raw.empty()) throw InvalidArgument("empty sequence");

    AlphabetMap map;
    if (alphabet) {
        map = AlphabetMap::from_bytes(*alphabet);
    } else {
        std::array<bool, 256> seen{};
        std::string distinct;
        for (unsigned char b : raw) {
            if (b < 33 || b > 126)
                throw InvalidArgument("byte " + std::to_string(b) +
                                      " outside printable ASCII; pass an explicit alphabet");
            if (!seen[b]) distinct.push_back(static_cast<char>(b));
            seen[b] = true;
        }
        map = AlphabetMap::from_bytes(distinct);
    }
    if (map.sigma() == 0) throw InvalidArgument("empty alphabet");

    Sequence seq;
    seq.sigma = map.sigma();
    seq.symbols.reserve(raw.size());
    for (unsigned char b : raw) {
        Symbol s = map.symbol(b);
        if (s == 0) throw InvalidArgument("byte '" + std::string(1, static_cast<char>(b)) +
                                          "' is not in the alphabet");
        seq.symbols.push_back(s);
    }
    return {std::move(seq), std::move(map)};
}

std::string union_alphabet(const std::vector<std::string_view>& raws) {
    std::array<bool, 256> seen{};
    for (auto raw : raws)
        for (unsigned char b : raw) seen[b] = true;
    std::string out;
    for (unsigned b = 0; b < 256; ++b)
        if (seen[b]) out.push_back(static_cast<char>(b));
    return out;
}

Sequence make_sequence(std::vector<Symbol> symbols, std::size_t sigma, std::string name) {
    if (symbols.empty()) throw InvalidArgument("empty sequence");
    if (sigma == 0 || sigma > kMaxSigma) throw InvalidArgument("sigma out of range");
    for (Symbol s : symbols)
        if (s == 0 || s > sigma) throw InvalidArgument("symbol outside [1..sigma]");
    return Sequence{std::move(symbols), sigma, std::move(name)};
}

Sequence sequence_from_string(std::string_view text, std::optional<std::string_view> alphabet) {
    return map_alphabet(text, alphabet).sequence;
}

}  // namespace bwtk
