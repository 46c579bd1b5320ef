#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bwtk/types.hpp"

namespace bwtk {

/// Length or character weighting for the weighted substring kernel.
///   uniform            g(l) = 1
///   exponential(eps)   g(l) = eps^l
///   band(kmin, kmax)   g(l) = 1 if kmin <= l <= kmax, else 0
///   charscore(q)       weight of W is prod_i q(W[i]); q[c-1] scores symbol c
struct WeightSpec {
    enum class Kind { uniform, exponential, band, charscore };

    Kind kind = Kind::uniform;
    double epsilon = 0.0;
    std::size_t kmin = 1;
    std::size_t kmax = 1;
    std::vector<double> q;

    static WeightSpec uniform() { return {}; }
    static WeightSpec exponential(double eps) {
        WeightSpec w;
        w.kind = Kind::exponential;
        w.epsilon = eps;
        return w;
    }
    static WeightSpec band(std::size_t lo, std::size_t hi) {
        WeightSpec w;
        w.kind = Kind::band;
        w.kmin = lo;
        w.kmax = hi;
        return w;
    }
    static WeightSpec charscore(std::vector<double> scores) {
        WeightSpec w;
        w.kind = Kind::charscore;
        w.q = std::move(scores);
        return w;
    }

    /// Throws InvalidArgument unless the parameters are usable for `sigma`.
    void validate(std::size_t sigma) const;

    /// "uniform", "exp:0.5", "band:2:4", "charscore:0.1,0.9".
    std::string describe() const;
    static WeightSpec parse(const std::string& text);
};

enum class GMode { unit, exact };

struct ZScoreParams {
    GMode g_mode = GMode::unit;
};

/// profile[k, f] for k in [k1..k2], f in [f1..f2]; the last column saturates
/// (counts k-mers occurring at least f2 times).
struct ProfileMatrix {
    std::size_t k1 = 1, k2 = 1, f1 = 1, f2 = 1;
    std::vector<std::int64_t> cells;

    ProfileMatrix() = default;
    ProfileMatrix(std::size_t k_lo, std::size_t k_hi, std::size_t f_lo, std::size_t f_hi)
        : k1(k_lo), k2(k_hi), f1(f_lo), f2(f_hi), cells((k_hi - k_lo + 1) * (f_hi - f_lo + 1), 0) {}

    std::size_t columns() const { return f2 - f1 + 1; }
    std::int64_t& at(std::size_t k, std::size_t f) { return cells[(k - k1) * columns() + (f - f1)]; }
    std::int64_t at(std::size_t k, std::size_t f) const { return cells[(k - k1) * columns() + (f - f1)]; }

    friend bool operator==(const ProfileMatrix&, const ProfileMatrix&) = default;
};

/// A string over [1..sigma].
using Word = std::vector<Symbol>;

/// Parameters for the name-dispatched measure entry points; each measure
/// reads only the fields it needs.
struct MeasureParams {
    std::size_t k = 1;
    std::size_t k1 = 1, k2 = 1;
    std::size_t f1 = 1, f2 = 1;
    std::size_t kcap = 8;
    double tau = 0.0;
    WeightSpec weight;
    std::vector<double> q;  // per-symbol probabilities (d2s, d2star)
    ZScoreParams zscore;
};

using KernelSeries = std::vector<std::optional<double>>;
using MeasureValue =
    std::variant<std::int64_t, double, std::vector<double>, KernelSeries, ProfileMatrix, std::vector<Word>>;

/// Names accepted by the dispatchers, in a fixed order.
const std::vector<std::string>& measure_names();
/// Number of input sequences the measure expects (1 or 2).
std::size_t measure_arity(const std::string& name);

/// Validates per-symbol probabilities over [1..sigma]: positive, summing to 1.
void validate_probabilities(const std::vector<double>& q, std::size_t sigma);

}  // namespace bwtk
