#include "bwtk/measure_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwtk {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
    return v;
}

std::size_t to_size(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("not a non-negative integer: '" + s + "'");
    return std::stoull(s);
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

void WeightSpec::validate(std::size_t sigma) const {
    switch (kind) {
        case Kind::uniform:
            return;
        case Kind::exponential:
            if (!(epsilon > 0) || !std::isfinite(epsilon))
                throw InvalidArgument("exponential weight needs epsilon > 0");
            return;
        case Kind::band:
            if (kmin < 1 || kmin > kmax) throw InvalidArgument("band weight needs 1 <= kmin <= kmax");
            return;
        case Kind::charscore:
            if (q.size() != sigma)
                throw InvalidArgument("charscore weight needs one score per symbol (" +
                                      std::to_string(sigma) + ")");
            for (double v : q)
                if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument("charscore scores must be > 0");
            return;
    }
}

std::string WeightSpec::describe() const {
    switch (kind) {
        case Kind::uniform:
            return "uniform";
        case Kind::exponential:
            return "exp:" + format_double(epsilon);
        case Kind::band:
            return "band:" + std::to_string(kmin) + ":" + std::to_string(kmax);
        case Kind::charscore: {
            std::string s = "charscore:";
            for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + format_double(q[i]);
            return s;
        }
    }
    return {};
}

WeightSpec WeightSpec::parse(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.empty()) throw InvalidArgument("empty weight spec");
    const std::string& kind = parts[0];
    if (kind == "uniform" && parts.size() == 1) return uniform();
    if (kind == "exp" && parts.size() == 2) return exponential(to_double(parts[1]));
    if (kind == "band" && parts.size() == 3) return band(to_size(parts[1]), to_size(parts[2]));
    if (kind == "charscore" && parts.size() == 2) {
        std::vector<double> q;
        for (const auto& v : split(parts[1], ',')) q.push_back(to_double(v));
        return charscore(std::move(q));
    }
    throw InvalidArgument("bad weight spec '" + text +
                          "' (expected uniform, exp:EPS, band:KMIN:KMAX or charscore:Q1,Q2,...)");
}

const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names = {
        "kmer_complexity", "substring_complexity", "kmer_profile",   "entropy_range",
        "maw_count",       "maw_enumerate",        "kl_divergence_range", "calibrate_kmax",
        "calibrate_kmin",  "kmer_kernel",          "kmer_kernel_range", "substring_kernel",
        "weighted_substring_kernel", "d2s_distance", "d2star_distance", "maw_jaccard",
        "maw_cosine",      "markov_kernel"};
    return names;
}

std::size_t measure_arity(const std::string& name) {
    const auto& names = measure_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw InvalidArgument("unknown measure '" + name + "'");
    return it - names.begin() < 9 ? 1 : 2;
}

void validate_probabilities(const std::vector<double>& q, std::size_t sigma) {
    if (q.size() != sigma)
        throw InvalidArgument("need one probability per symbol (" + std::to_string(sigma) + ")");
    double sum = 0;
    for (double v : q) {
        if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument("probabilities must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("probabilities must sum to 1");
}

}  // namespace bwtk
