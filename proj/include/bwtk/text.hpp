#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bwtk/types.hpp"

namespace bwtk {

enum class InputFormat { fasta, raw };

struct RawRecord {
    std::string name;
    std::string bytes;
};

/// A validated string over [1..sigma]; the terminator is implicit.
struct Sequence {
    std::vector<Symbol> symbols;
    std::size_t sigma = 0;
    std::string name;

    std::size_t size() const { return symbols.size(); }
};

/// Bijection between input bytes and symbols 1..sigma.
class AlphabetMap {
  public:
    AlphabetMap() { byte_to_symbol_.fill(0); }

    /// Symbols are assigned in ascending byte order.
    static AlphabetMap from_bytes(std::string_view distinct_bytes);

    std::size_t sigma() const { return symbol_to_byte_.size(); }
    bool contains(unsigned char b) const { return byte_to_symbol_[b] != 0; }
    Symbol symbol(unsigned char b) const { return byte_to_symbol_[b]; }
    unsigned char byte(Symbol s) const { return symbol_to_byte_.at(s - 1); }
    std::string bytes() const { return {symbol_to_byte_.begin(), symbol_to_byte_.end()}; }

    std::string decode(const std::vector<Symbol>& symbols) const;

  private:
    std::array<Symbol, 256> byte_to_symbol_;
    std::vector<unsigned char> symbol_to_byte_;
};

/// Reads FASTA records (sequence lines concatenated) or a single raw
/// record (all whitespace stripped).
std::vector<RawRecord> load_input(const std::filesystem::path& path, InputFormat format);

/// Parses in-memory text with the same rules as load_input.
std::vector<RawRecord> parse_input(std::string_view text, InputFormat format);

/// Picks fasta when the first non-blank byte is '>', raw otherwise.
InputFormat detect_format(std::string_view text);

struct MappedSequence {
    Sequence sequence;
    AlphabetMap alphabet;
};

/// Maps raw bytes to [1..sigma]. Without an explicit alphabet, sigma is the
/// number of distinct bytes and only printable ASCII [33..126] is accepted.
MappedSequence map_alphabet(std::string_view raw,
                            std::optional<std::string_view> alphabet = std::nullopt);

/// Sorted distinct bytes across several inputs (the shared pair alphabet).
std::string union_alphabet(const std::vector<std::string_view>& raws);

/// Builds a Sequence directly from integer symbols (tests, index tooling).
Sequence make_sequence(std::vector<Symbol> symbols, std::size_t sigma, std::string name = {});

/// Maps a string over its own sorted alphabet, or over `alphabet`.
Sequence sequence_from_string(std::string_view text,
                              std::optional<std::string_view> alphabet = std::nullopt);

}  // namespace bwtk
