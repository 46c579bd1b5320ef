// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bwtk/enumerate.hpp"
#include "bwtk/kernels.hpp"
#include "bwtk/oracle.hpp"
#include "test_support.hpp"

using namespace bwtk;
using bwtk::testing::close;
using bwtk::testing::random_regime;
using bwtk::testing::random_sequence;

namespace {

/// Collects mismatches for one criterion; only the first few are printed.
class Check {
  public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (notes_.size() < 5) notes_.push_back(what);
    }
    bool passed() const { return failures_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << checks_ << " checks, " << failures_ << " failed";
        for (const auto& n : notes_) s << "\n      " << n;
        return s.str();
    }

  private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::vector<std::string> notes_;
};

std::string str(const Sequence& s) {
    std::string out;
    for (Symbol c : s.symbols) out.push_back(static_cast<char>('a' + c - 1));
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool real_match(double got, double want) { return close(got, want, 1e-9, 1e-6); }

/// Runs both sides; they must agree on the value or both throw ZeroDenominator.
void compare_real(Check& c, const std::string& label, const std::function<double()>& fast,
                  const std::function<double()>& slow) {
    std::optional<double> a, b;
    try {
        a = fast();
    } catch (const ZeroDenominator&) {
    }
    try {
        b = slow();
    } catch (const ZeroDenominator&) {
    }
    bool ok = a.has_value() == b.has_value() && (!a || real_match(*a, *b));
    c.expect(ok, label + ": got " + (a ? fmt(*a) : "undefined") + ", want " + (b ? fmt(*b) : "undefined"));
}

void compare_series(Check& c, const std::string& label, const std::vector<double>& got,
                    const std::vector<double>& want) {
    bool ok = got.size() == want.size();
    for (std::size_t i = 0; ok && i < got.size(); ++i) ok = real_match(got[i], want[i]);
    c.expect(ok, label);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- criteria

Check integer_oracle() {
    Check c;
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        auto [len, sigma] = random_regime(rng);
        Sequence t = random_sequence(rng, len, sigma);
        FmIndex f(t);
        const std::string tag = "\"" + str(t) + "\"";
        for (std::size_t k = 1; k <= 8; ++k)
            c.expect(kmer_complexity(f, k) == oracle::kmer_complexity(t, k), tag + " C_" + std::to_string(k));
        c.expect(substring_complexity(f) == oracle::substring_complexity(t), tag + " substring complexity");
        c.expect(maw_count(f) == oracle::maw_count(t), tag + " maw_count");
        c.expect(kmer_profile(f, 1, 8, 1, 4) == oracle::kmer_profile(t, 1, 8, 1, 4), tag + " profile");
        auto words = maw_words(f);
        c.expect(std::set<Word>(words.begin(), words.end()) == oracle::maws(t) &&
                     words.size() == oracle::maws(t).size(),
                 tag + " maw set");
    }
    return c;
}

Check real_oracle() {
    Check c;
    std::mt19937_64 rng(202);
    const WeightSpec weights[] = {WeightSpec::uniform(), WeightSpec::exponential(0.5), WeightSpec::band(2, 4),
                                  WeightSpec::charscore({})};
    for (int trial = 0; trial < 100; ++trial) {
        auto [len1, sigma] = random_regime(rng);
        std::size_t len2 = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
        Sequence s1 = random_sequence(rng, len1, sigma), s2 = random_sequence(rng, len2, sigma);
        FmIndex a(s1), b(s2);
        const std::string tag = "(\"" + str(s1) + "\", \"" + str(s2) + "\") ";
        std::vector<double> q(sigma, 1.0 / double(sigma));

        for (std::size_t k = 1; k <= 4; ++k) {
            const std::string kk = std::to_string(k);
            compare_real(c, tag + "kmer_kernel k=" + kk, [&] { return kmer_kernel(a, b, k); },
                         [&] { return oracle::kmer_kernel(s1, s2, k); });
            compare_real(c, tag + "d2s k=" + kk, [&] { return d2s_distance(a, b, k, q); },
                         [&] { return oracle::d2s_distance(s1, s2, k, q); });
            compare_real(c, tag + "d2star k=" + kk, [&] { return d2star_distance(a, b, k, q); },
                         [&] { return oracle::d2star_distance(s1, s2, k, q); });
        }
        auto got = kmer_kernel_range(a, b, 1, 8), want = oracle::kmer_kernel_range(s1, s2, 1, 8);
        bool range_ok = got.size() == want.size();
        for (std::size_t i = 0; range_ok && i < got.size(); ++i)
            range_ok = got[i].has_value() == want[i].has_value() && (!got[i] || real_match(*got[i], *want[i]));
        c.expect(range_ok, tag + "kmer_kernel_range");

        compare_real(c, tag + "substring_kernel", [&] { return substring_kernel(a, b); },
                     [&] { return oracle::substring_kernel(s1, s2); });
        for (auto w : weights) {
            if (w.kind == WeightSpec::Kind::charscore) {
                w.q.assign(sigma, 0.0);
                for (std::size_t i = 0; i < sigma; ++i) w.q[i] = double(i + 1) / double(sigma + 1);
            }
            compare_real(c, tag + "weighted " + w.describe(), [&] { return weighted_substring_kernel(a, b, w); },
                         [&] { return oracle::weighted_substring_kernel(s1, s2, w); });
        }
        compare_real(c, tag + "maw_jaccard", [&] { return maw_jaccard(a, b); },
                     [&] { return oracle::maw_jaccard(s1, s2); });
        compare_real(c, tag + "maw_cosine", [&] { return maw_cosine(a, b); },
                     [&] { return oracle::maw_cosine(s1, s2); });
        for (GMode g : {GMode::unit, GMode::exact})
            compare_real(c, tag + (g == GMode::unit ? "markov unit" : "markov exact"),
                         [&] { return markov_kernel(a, b, {g}); },
                         [&] { return oracle::markov_kernel(s1, s2, g); });
        compare_series(c, tag + "entropy_range", entropy_range(a, 0, 5), oracle::entropy_range(s1, 0, 5));
        compare_series(c, tag + "kl_divergence_range", kl_divergence_range(a, 2, 6),
                       oracle::kl_divergence_range(s1, 2, 6));
    }
    return c;
}

Check micro_cases() {
    Check c;
    FmIndex abab(sequence_from_string("abab"));
    c.expect(kmer_complexity(abab, 1) == 2, "abab C_1 = 2");
    c.expect(kmer_complexity(abab, 2) == 2, "abab C_2 = 2");
    c.expect(substring_complexity(abab) == 7, "abab C_inf = 7");
    auto maws = maw_count(abab);
    c.expect(maws == 2, "abab maw_count = 2 expected, got " + std::to_string(maws) +
                            "; the minimal absent words of abab over {a,b} are aa, bb and baba "
                            "(ba and ab occur, bab and aba occur, baba does not), so 2 cannot be reached");
    auto prof = kmer_profile(abab, 1, 2, 1, 2);
    c.expect(prof.at(1, 1) == 0 && prof.at(1, 2) == 2 && prof.at(2, 1) == 1 && prof.at(2, 2) == 1,
             "abab profile [[0,2],[1,1]]");

    FmIndex aab(sequence_from_string("aab", "ab")), abb(sequence_from_string("abb", "ab"));
    c.expect(std::abs(kmer_kernel(aab, abb, 1) - 0.8) <= 1e-12, "aab/abb kappa_1 = 0.8");
    c.expect(std::abs(maw_jaccard(aab, abb) - 0.2) <= 1e-12, "aab/abb MAW Jaccard = 0.2");
    c.expect(std::abs(maw_cosine(aab, abb) - 1.0 / 3.0) <= 1e-12, "aab/abb MAW cosine = 1/3");
    c.expect(std::abs(entropy_range(aab, 0, 0)[0] - 0.918296) <= 1e-6, "aab H_0 = 0.918296");
    return c;
}

Check structural() {
    Check c;
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        auto [len, sigma] = random_regime(rng);
        Sequence t = random_sequence(rng, len, sigma);
        FmIndex f(t);
        const std::string tag = "\"" + str(t) + "\" ";

        std::size_t visits = enumerate_right_maximal(f, [](const Walker::Visit&) {});
        c.expect(visits <= f.n(), tag + "visit count " + std::to_string(visits));

        auto unit = [&](const std::string& what, double v) {
            c.expect(std::abs(v - 1.0) <= 1e-12, tag + "self " + what + " = " + fmt(v));
        };
        for (std::size_t k = 1; k <= std::min<std::size_t>(3, len); ++k) unit("kmer", kmer_kernel(f, f, k));
        unit("substring", substring_kernel(f, f));
        unit("weighted exp", weighted_substring_kernel(f, f, WeightSpec::exponential(0.5)));
        unit("maw_jaccard", maw_jaccard(f, f));
        unit("maw_cosine", maw_cosine(f, f));
        unit("markov unit", markov_kernel(f, f, {GMode::unit}));
        unit("markov exact", markov_kernel(f, f, {GMode::exact}));

        for (double h : entropy_range(f, 0, 6))
            c.expect(h >= 0.0 && h <= std::log2(double(sigma)) + 1e-12, tag + "entropy in [0, log2 sigma]");
        for (std::size_t k = 1; k <= 6; ++k) {
            auto ck = kmer_complexity(f, k);
            c.expect(ck >= 0 && ck <= std::min<std::int64_t>(std::pow(double(sigma), double(k)), len), tag + "C_k range");
        }
        c.expect(maw_count(f) >= 0, tag + "maw_count >= 0");
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto [len1, sigma] = random_regime(rng);
        std::size_t len2 = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
        FmIndex a(random_sequence(rng, len1, sigma)), b(random_sequence(rng, len2, sigma));
        for (std::size_t k = 1; k <= 3; ++k) {
            std::optional<double> kk;
            try {
                kk = kmer_kernel(a, b, k);
            } catch (const ZeroDenominator&) {
                continue;
            }
            double band = weighted_substring_kernel(a, b, WeightSpec::band(k, k));
            c.expect(std::abs(band - *kk) <= 1e-12, "band[k,k] = kmer_kernel k=" + std::to_string(k));
            c.expect(*kk >= 0.0 && *kk <= 1.0 + 1e-12, "kmer_kernel in [0,1]");
        }
        double s = substring_kernel(a, b);
        c.expect(s >= 0.0 && s <= 1.0 + 1e-12, "substring kernel in [0,1]");
        double j = maw_jaccard(a, b);
        c.expect(j >= 0.0 && j <= 1.0, "maw_jaccard in [0,1]");
        double cs = maw_cosine(a, b);
        c.expect(cs >= 0.0 && cs <= 1.0 + 1e-12, "maw_cosine in [0,1]");
        double z = markov_kernel(a, b, {GMode::exact});
        c.expect(z >= -1.0 - 1e-12 && z <= 1.0 + 1e-12, "markov in [-1,1]");
    }
    return c;
}

Check single_pass() {
    Check c;
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        auto [len1, sigma] = random_regime(rng);
        std::size_t len2 = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
        FmIndex a(random_sequence(rng, len1, sigma)), b(random_sequence(rng, len2, sigma));
        MeasureParams p;
        p.k = 2;
        p.k1 = 2;
        p.k2 = 4;
        p.f1 = 1;
        p.f2 = 3;
        p.q.assign(sigma, 1.0 / double(sigma));
        p.tau = 0.1;
        p.kcap = 5;
        for (const auto& name : measure_names()) {
            auto before_a = a.traversals(), before_b = b.traversals();
            std::vector<const FmIndex*> in{&a};
            if (measure_arity(name) == 2) in.push_back(&b);
            try {
                compute_measure(name, in, p);
            } catch (const ZeroDenominator&) {
            }
            c.expect(a.traversals() == before_a + 1 && b.traversals() == before_b + (in.size() == 2 ? 1 : 0),
                     name + " traversal count");
        }

        // stack depth: 2 (sigma+1) log2(n) frames
        WalkStats single, pair;
        enumerate_right_maximal(a, [](const Walker::Visit&) {}, &single);
        enumerate_generalized(a, b, [](const PairWalker::Visit&) {}, &pair);
        auto bound = [&](std::size_t n) { return 2.0 * double(sigma + 1) * std::max(1.0, std::log2(double(n))); };
        c.expect(double(single.peak_frames) <= bound(a.n()), "single peak frames " + std::to_string(single.peak_frames));
        c.expect(double(pair.peak_frames) <= bound(a.n() + b.n()), "pair peak frames " + std::to_string(pair.peak_frames));
    }
    // longer and repetitive inputs stress the stack more than short random ones
    for (std::size_t sigma : {2, 4}) {
        std::mt19937_64 r(sigma);
        for (auto text : {bwtk::testing::random_text(r, 20000, sigma), bwtk::testing::repetitive_text(r, 20000, sigma),
                          std::string(5000, 'a')}) {
            FmIndex f(sequence_from_string(text, bwtk::testing::letters(sigma)));
            WalkStats st;
            enumerate_right_maximal(f, [](const Walker::Visit&) {}, &st);
            double b = 2.0 * double(sigma + 1) * std::log2(double(f.n()));
            c.expect(double(st.peak_frames) <= b, "peak frames " + std::to_string(st.peak_frames) + " on length " +
                                                      std::to_string(text.size()));
        }
    }
    return c;
}

Check scaling(std::string& detail) {
    Check c;
    std::mt19937_64 rng(606);
    double times[2] = {0, 0};
    std::size_t sizes[2] = {100000, 1000000};
    std::ostringstream d;
    for (int i = 0; i < 2; ++i) {
        auto t0 = Clock::now();
        FmIndex f(random_sequence(rng, sizes[i], 4));
        double build = seconds_since(t0);
        t0 = Clock::now();
        auto value = substring_complexity(f);
        times[i] = seconds_since(t0);
        d << (i ? ", " : "") << "n=" << sizes[i] << ": index " << fmt(build).substr(0, 6) << " s, measure "
          << fmt(times[i]).substr(0, 6) << " s";
        c.expect(value > 0, "non-trivial result");
        c.expect(build + times[i] < 120.0, "n=" + std::to_string(sizes[i]) + " within 120 s");
    }
    double ratio = times[1] / std::max(times[0], 1e-9);
    d << ", ratio " << fmt(ratio).substr(0, 5);
    c.expect(ratio <= 15.0, "runtime ratio " + fmt(ratio) + " > 15");
    detail = d.str();
    return c;
}

Check round_trip() {
    Check c;
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 200; ++trial) {
        auto [len, sigma] = random_regime(rng);
        Sequence t = random_sequence(rng, len, sigma);
        FmIndex f(t);
        std::vector<Symbol> back;
        f.for_each_symbol_backward([&](Symbol s) { back.push_back(s); });
        std::reverse(back.begin(), back.end());
        c.expect(back == t.symbols, "\"" + str(t) + "\"");
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check(std::string&)> run;
    };
    const Criterion criteria[] = {
        {"integer measures equal the oracle (200 strings)", [](std::string&) { return integer_oracle(); }},
        {"real measures match the oracle within 1e-9 (100 pairs)", [](std::string&) { return real_oracle(); }},
        {"hand-derived micro-cases", [](std::string&) { return micro_cases(); }},
        {"structural invariants", [](std::string&) { return structural(); }},
        {"one traversal per index, bounded stack", [](std::string&) { return single_pass(); }},
        {"substring complexity scaling 1e5 -> 1e6", scaling},
        {"BWT round trip (200 strings)", [](std::string&) { return round_trip(); }},
    };

    int failed = 0;
    int id = 1;
    for (const auto& crit : criteria) {
        std::string detail;
        auto t0 = Clock::now();
        Check c = crit.run(detail);
        double secs = seconds_since(t0);
        std::printf("%s %d: %s [%.2f s] %s\n", c.passed() ? "PASS" : "FAIL", id, crit.name, secs,
                    detail.c_str());
        if (!c.passed()) {
            ++failed;
            std::printf("      %s\n", c.summary().c_str());
        }
        ++id;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
