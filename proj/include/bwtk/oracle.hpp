#pragma once

// Brute-force reference implementations. Everything here works on plain
// substring tables and position scans; nothing touches the BWT code.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bwtk/measure_types.hpp"
#include "bwtk/text.hpp"

namespace bwtk::oracle {

/// Input length limit; BWTK_GUARD overrides the default of 4096.
std::size_t default_guard();

/// Occurrence counts of every non-empty substring of T (linear, no terminator).
class SubstringTable {
public:
    explicit SubstringTable(const Sequence& seq, std::size_t guard = default_guard());

    /// 0 when absent; count of the empty word is |T|.
    std::size_t count(const Word& w) const;
    std::size_t length() const { return text_.size(); }
    std::size_t sigma() const { return sigma_; }
    const Word& text() const { return text_; }
    const std::map<Word, std::size_t>& counts() const { return counts_; }

    /// Distinct substrings of length k, in lexicographic order.
    std::vector<Word> of_length(std::size_t k) const;
    /// Length of the longest substring occurring at least twice (0 if none).
    std::size_t longest_repeat() const;

private:
    Word text_;
    std::size_t sigma_;
    std::map<Word, std::size_t> counts_;
};

SubstringTable oracle_counts(const Sequence& seq, std::size_t guard = default_guard());

// Suffix-tree style sets over T# (left/right extensions include the
// terminator, and the symbol before position 1 is the terminator).
std::set<Word> right_maximal(const Sequence& t);
std::set<Word> maximal_repeats(const Sequence& t);
/// Right-maximal strings of T1#1 T2#2 with distinct terminators.
std::set<Word> generalized_right_maximal(const Sequence& t1, const Sequence& t2);

std::int64_t kmer_complexity(const Sequence& t, std::size_t k);
std::int64_t substring_complexity(const Sequence& t);
ProfileMatrix kmer_profile(const Sequence& t, std::size_t k1, std::size_t k2, std::size_t f1, std::size_t f2);
std::vector<double> entropy_range(const Sequence& t, std::size_t k1, std::size_t k2);

double kmer_kernel(const Sequence& t1, const Sequence& t2, std::size_t k);
KernelSeries kmer_kernel_range(const Sequence& t1, const Sequence& t2, std::size_t k1, std::size_t k2);
double substring_kernel(const Sequence& t1, const Sequence& t2);
double weighted_substring_kernel(const Sequence& t1, const Sequence& t2, const WeightSpec& w);
double d2s_distance(const Sequence& t1, const Sequence& t2, std::size_t k, const std::vector<double>& q);
double d2star_distance(const Sequence& t1, const Sequence& t2, std::size_t k, const std::vector<double>& q);

/// All minimal absent words aWb with a, b in [1..sigma].
std::set<Word> maws(const Sequence& t);
std::int64_t maw_count(const Sequence& t);
double maw_jaccard(const Sequence& t1, const Sequence& t2);
double maw_cosine(const Sequence& t1, const Sequence& t2);

/// z-scores of every aWb whose z is defined and non-zero under the mode.
std::map<Word, double> zscores(const Sequence& t, GMode mode);
double markov_kernel(const Sequence& t1, const Sequence& t2, GMode mode);

std::vector<double> kl_divergence_range(const Sequence& t, std::size_t k1, std::size_t k2);
std::int64_t calibrate_kmax(const Sequence& t, double tau, std::size_t kcap);
std::int64_t calibrate_kmin(const Sequence& t, std::size_t kcap);

MeasureValue oracle_measure(const std::string& name, std::span<const Sequence> inputs,
                            const MeasureParams& params);

}  // namespace bwtk::oracle
