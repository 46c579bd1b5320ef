#pragma once

// String kernels and complexity measures, each computed as a fold over one
// suffix-link-tree traversal of the input index (or pair of indexes).
//
// Counts are linear occurrence counts in T (no wrap-around), composition
// vectors range over [1..sigma] only, and f(empty) = |T|. Logarithms are base 2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bwtk/bwt_index.hpp"
#include "bwtk/enumerate.hpp"
#include "bwtk/measure_types.hpp"

namespace bwtk {

/// Numerator and squared norms of a cosine kernel.
struct KernelAccumulator {
    long double N = 0;
    long double D1 = 0;
    long double D2 = 0;

    /// N / sqrt(D1 D2); throws ZeroDenominator when either norm is zero.
    double value(const std::string& what = "zero-norm composition vector") const;
};

std::int64_t kmer_complexity(const FmIndex& t, std::size_t k);
/// Cosine of the k-mer count vectors. Throws ZeroDenominator if a string is
/// shorter than k.
double kmer_kernel(const FmIndex& t1, const FmIndex& t2, std::size_t k);
/// kmer_kernel for every k in [k1..k2]; undefined entries are empty.
KernelSeries kmer_kernel_range(const FmIndex& t1, const FmIndex& t2, std::size_t k1, std::size_t k2);
ProfileMatrix kmer_profile(const FmIndex& t, std::size_t k1, std::size_t k2, std::size_t f1, std::size_t f2);
/// H_k = (1/|T|) sum_W sum_a f(Wa) log(F(W) / f(Wa)), with a ranging over
/// [1..sigma] and F(W) = sum_a f(Wa).
std::vector<double> entropy_range(const FmIndex& t, std::size_t k1, std::size_t k2);
/// Smallest k in [1..kcap] maximizing the number of k-mers seen twice or more.
std::int64_t calibrate_kmin(const FmIndex& t, std::size_t kcap);

std::int64_t substring_complexity(const FmIndex& t);
double substring_kernel(const FmIndex& t1, const FmIndex& t2);
double weighted_substring_kernel(const FmIndex& t1, const FmIndex& t2, const WeightSpec& w);

/// D2s and D2* over all W in [1..sigma]^k with centered counts
/// f(W) - (|T| - k + 1) q(W). `q` holds one probability per symbol.
double d2s_distance(const FmIndex& t1, const FmIndex& t2, std::size_t k, const std::vector<double>& q);
double d2star_distance(const FmIndex& t1, const FmIndex& t2, std::size_t k, const std::vector<double>& q);

/// One minimal absent word a W b. W is the node being visited: its interval
/// is [sp, ep] and its label is available through `node`.
struct MawEvent {
    Symbol a;
    Symbol b;
    std::size_t depth;
    Pos sp;
    Pos ep;
    const Walker::Visit* node;

    Word word() const;
};

std::int64_t maw_count(const FmIndex& t);
/// Calls `visitor` once per minimal absent word; returns the count.
std::size_t maw_enumerate(const FmIndex& t, const std::function<void(const MawEvent&)>& visitor);
/// All minimal absent words, sorted.
std::vector<Word> maw_words(const FmIndex& t);
double maw_jaccard(const FmIndex& t1, const FmIndex& t2);
double maw_cosine(const FmIndex& t1, const FmIndex& t2);

/// Cosine of the Markov z-score vectors indexed by aWb, a, b in [1..sigma].
double markov_kernel(const FmIndex& t1, const FmIndex& t2, const ZScoreParams& params);
/// KL divergence between k-mer probabilities and their order-(k-2) Markov
/// estimates, for k in [k1..k2], k1 >= 2.
std::vector<double> kl_divergence_range(const FmIndex& t, std::size_t k1, std::size_t k2);
/// Smallest k in [2..kcap] whose KL tail sum over [k..kcap] is below tau,
/// or kcap + 1.
std::int64_t calibrate_kmax(const FmIndex& t, double tau, std::size_t kcap);

/// Name-based entry point mirroring oracle::oracle_measure.
MeasureValue compute_measure(const std::string& name, std::span<const FmIndex* const> inputs,
                             const MeasureParams& params);

}  // namespace bwtk
