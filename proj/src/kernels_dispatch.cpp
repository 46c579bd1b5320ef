#include "bwtk/kernels.hpp"

namespace bwtk {

MeasureValue compute_measure(const std::string& name, std::span<const FmIndex* const> in,
                             const MeasureParams& p) {
    const std::size_t arity = measure_arity(name);
    if (in.size() != arity)
        throw InvalidArgument(name + " expects " + std::to_string(arity) + " sequence(s), got " +
                              std::to_string(in.size()));
    const FmIndex& a = *in[0];
    if (name == "kmer_complexity") return kmer_complexity(a, p.k);
    if (name == "substring_complexity") return substring_complexity(a);
    if (name == "kmer_profile") return kmer_profile(a, p.k1, p.k2, p.f1, p.f2);
    if (name == "entropy_range") return entropy_range(a, p.k1, p.k2);
    if (name == "maw_count") return maw_count(a);
    if (name == "maw_enumerate") return maw_words(a);
    if (name == "kl_divergence_range") return kl_divergence_range(a, p.k1, p.k2);
    if (name == "calibrate_kmax") return calibrate_kmax(a, p.tau, p.kcap);
    if (name == "calibrate_kmin") return calibrate_kmin(a, p.kcap);
    const FmIndex& b = *in[1];
    if (name == "kmer_kernel") return kmer_kernel(a, b, p.k);
    if (name == "kmer_kernel_range") return kmer_kernel_range(a, b, p.k1, p.k2);
    if (name == "substring_kernel") return substring_kernel(a, b);
    if (name == "weighted_substring_kernel") return weighted_substring_kernel(a, b, p.weight);
    if (name == "d2s_distance") return d2s_distance(a, b, p.k, p.q);
    if (name == "d2star_distance") return d2star_distance(a, b, p.k, p.q);
    if (name == "maw_jaccard") return maw_jaccard(a, b);
    if (name == "maw_cosine") return maw_cosine(a, b);
    if (name == "markov_kernel") return markov_kernel(a, b, p.zscore);
    throw InvalidArgument("unknown measure '" + name + "'");
}

}  // namespace bwtk
