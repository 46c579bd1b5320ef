#include "bwtk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace bwtk::oracle {

namespace {

constexpr int kSep1 = -1;
constexpr int kSep2 = -2;

Word slice(const Word& t, std::size_t pos, std::size_t len) {
    return Word(t.begin() + static_cast<std::ptrdiff_t>(pos), t.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

bool occurs_at(const Word& t, const Word& w, std::size_t pos) {
    return pos + w.size() <= t.size() && std::equal(w.begin(), w.end(), t.begin() + static_cast<std::ptrdiff_t>(pos));
}

/// Right neighbours of every occurrence of w in t#; `sep` stands for #.
void right_context(const Word& t, const Word& w, int sep, std::set<int>& out) {
    for (std::size_t p = 0; p + w.size() <= t.size(); ++p) {
        if (!occurs_at(t, w, p)) continue;
        std::size_t next = p + w.size();
        out.insert(next < t.size() ? static_cast<int>(t[next]) : sep);
    }
}

void left_context(const Word& t, const Word& w, std::set<int>& out) {
    if (w.empty()) {
        out.insert(0);
        for (Symbol c : t) out.insert(c);
        return;
    }
    for (std::size_t p = 0; p + w.size() <= t.size(); ++p)
        if (occurs_at(t, w, p)) out.insert(p == 0 ? 0 : static_cast<int>(t[p - 1]));
}

Word append(Word w, Symbol c) {
    w.push_back(c);
    return w;
}

Word prepend(Symbol c, const Word& w) {
    Word v{c};
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

double cosine(double n, double d1, double d2, const char* what) {
    if (d1 == 0 || d2 == 0) throw ZeroDenominator(what);
    return n / std::sqrt(d1 * d2);
}

template <typename Vec>
double cosine_of(const Vec& x1, const Vec& x2, const char* what) {
    double n = 0, d1 = 0, d2 = 0;
    for (const auto& [w, v] : x1) {
        d1 += v * v;
        auto it = x2.find(w);
        if (it != x2.end()) n += v * it->second;
    }
    for (const auto& [w, v] : x2) d2 += v * v;
    return cosine(n, d1, d2, what);
}

void require_same_alphabet(const Sequence& a, const Sequence& b) {
    if (a.sigma != b.sigma) throw InvalidArgument("sequences use different alphabet sizes");
}

void require_range(std::size_t lo, std::size_t hi, std::size_t min, const char* what) {
    if (lo < min || lo > hi)
        throw InvalidArgument(std::string("invalid ") + what + " range [" + std::to_string(lo) + ".." +
                              std::to_string(hi) + "]");
}

/// All words of length k over [1..sigma], in lexicographic order.
std::vector<Word> all_words(std::size_t sigma, std::size_t k) {
    double total = std::pow(static_cast<double>(sigma), static_cast<double>(k));
    if (total > double(1 << 22)) throw InvalidArgument("sigma^k too large for direct iteration");
    std::vector<Word> out;
    Word w(k, 1);
    while (true) {
        out.push_back(w);
        std::size_t i = k;
        while (i > 0 && w[i - 1] == sigma) w[--i] = 1;
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

/// Empirical probability f(W) / (n - |W|) with n = |T| + 1; 0 when W is absent.
double prob(const SubstringTable& tab, const Word& w) {
    if (tab.count(w) == 0) return 0;
    double n = static_cast<double>(tab.length() + 1);
    return static_cast<double>(tab.count(w)) / (n - static_cast<double>(w.size()));
}

/// Markov estimate p(aW) p(Wb) / p(W) of v = aWb, or 0 when p(W) = 0.
double markov_estimate(const SubstringTable& tab, const Word& v) {
    Word head = slice(v, 0, v.size() - 1);
    Word tail = slice(v, 1, v.size() - 1);
    Word mid = slice(v, 1, v.size() - 2);
    double pm = prob(tab, mid);
    if (pm == 0) return 0;
    return prob(tab, head) * prob(tab, tail) / pm;
}

double weight_of(const WeightSpec& w, const Word& word) {
    std::size_t len = word.size();
    switch (w.kind) {
        case WeightSpec::Kind::uniform:
            return 1.0;
        case WeightSpec::Kind::exponential:
            return std::pow(w.epsilon, static_cast<double>(len));
        case WeightSpec::Kind::band:
            return len >= w.kmin && len <= w.kmax ? 1.0 : 0.0;
        case WeightSpec::Kind::charscore: {
            double p = 1;
            for (Symbol c : word) p *= w.q[c - 1];
            return p;
        }
    }
    return 0;
}

std::map<Word, double> kmer_vector(const SubstringTable& tab, std::size_t k) {
    std::map<Word, double> v;
    for (const auto& w : tab.of_length(k)) v[w] = static_cast<double>(tab.count(w));
    return v;
}

template <typename Term>
double d2_sum(const Sequence& t1, const Sequence& t2, std::size_t k, const std::vector<double>& q, Term term) {
    require_same_alphabet(t1, t2);
    if (k < 1) throw InvalidArgument("k must be >= 1");
    validate_probabilities(q, t1.sigma);
    SubstringTable a(t1), b(t2);
    if (a.length() < k || b.length() < k) throw ZeroDenominator("sequence shorter than k");
    double e1 = static_cast<double>(a.length() + 1 - k);
    double e2 = static_cast<double>(b.length() + 1 - k);
    double sum = 0;
    for (const auto& w : all_words(t1.sigma, k)) {
        double qw = 1;
        for (Symbol c : w) qw *= q[c - 1];
        double x1 = static_cast<double>(a.count(w)) - e1 * qw;
        double x2 = static_cast<double>(b.count(w)) - e2 * qw;
        sum += term(x1, x2, qw, e1, e2);
    }
    return sum;
}

std::vector<double> kl_values(const SubstringTable& tab, std::size_t k1, std::size_t k2) {
    std::vector<double> out;
    for (std::size_t k = k1; k <= k2; ++k) {
        double kl = 0;
        for (const auto& v : tab.of_length(k)) {
            double p = prob(tab, v);
            kl += p * std::log2(p / markov_estimate(tab, v));
        }
        out.push_back(kl);
    }
    return out;
}

}  // namespace

std::size_t default_guard() {
    if (const char* env = std::getenv("BWTK_GUARD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 4096;
}

SubstringTable::SubstringTable(const Sequence& seq, std::size_t guard)
    : text_(seq.symbols), sigma_(seq.sigma) {
    if (text_.empty()) throw InvalidArgument("empty sequence");
    if (text_.size() > guard)
        throw InvalidArgument("sequence length " + std::to_string(text_.size()) + " exceeds oracle guard " +
                              std::to_string(guard));
    for (std::size_t i = 0; i < text_.size(); ++i)
        for (std::size_t len = 1; i + len <= text_.size(); ++len) ++counts_[slice(text_, i, len)];
}

std::size_t SubstringTable::count(const Word& w) const {
    if (w.empty()) return text_.size();
    auto it = counts_.find(w);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<Word> SubstringTable::of_length(std::size_t k) const {
    std::vector<Word> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    for (const auto& [w, c] : counts_)
        if (w.size() == k) out.push_back(w);
    return out;
}

std::size_t SubstringTable::longest_repeat() const {
    std::size_t best = 0;
    for (const auto& [w, c] : counts_)
        if (c >= 2) best = std::max(best, w.size());
    return best;
}

SubstringTable oracle_counts(const Sequence& seq, std::size_t guard) { return SubstringTable(seq, guard); }

std::set<Word> right_maximal(const Sequence& t) {
    SubstringTable tab(t);
    std::set<Word> out;
    auto check = [&](const Word& w) {
        std::set<int> right;
        right_context(tab.text(), w, kSep1, right);
        if (right.size() >= 2) out.insert(w);
    };
    check({});
    for (const auto& [w, c] : tab.counts()) check(w);
    return out;
}

std::set<Word> maximal_repeats(const Sequence& t) {
    std::set<Word> out;
    SubstringTable tab(t);
    for (const auto& w : right_maximal(t)) {
        std::set<int> left;
        left_context(tab.text(), w, left);
        if (left.size() >= 2) out.insert(w);
    }
    return out;
}

std::set<Word> generalized_right_maximal(const Sequence& t1, const Sequence& t2) {
    require_same_alphabet(t1, t2);
    SubstringTable a(t1), b(t2);
    std::set<Word> candidates{Word{}};
    for (const auto& [w, c] : a.counts()) candidates.insert(w);
    for (const auto& [w, c] : b.counts()) candidates.insert(w);
    std::set<Word> out;
    for (const auto& w : candidates) {
        std::set<int> right;
        right_context(a.text(), w, kSep1, right);
        right_context(b.text(), w, kSep2, right);
        if (right.size() >= 2) out.insert(w);
    }
    return out;
}

std::int64_t kmer_complexity(const Sequence& t, std::size_t k) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    return static_cast<std::int64_t>(SubstringTable(t).of_length(k).size());
}

std::int64_t substring_complexity(const Sequence& t) {
    return static_cast<std::int64_t>(SubstringTable(t).counts().size());
}

ProfileMatrix kmer_profile(const Sequence& t, std::size_t k1, std::size_t k2, std::size_t f1, std::size_t f2) {
    require_range(k1, k2, 1, "k");
    require_range(f1, f2, 1, "f");
    SubstringTable tab(t);
    ProfileMatrix m(k1, k2, f1, f2);
    for (std::size_t k = k1; k <= k2; ++k)
        for (const auto& w : tab.of_length(k)) {
            std::size_t f = std::min(tab.count(w), f2);
            if (f >= f1) ++m.at(k, f);
        }
    return m;
}

std::vector<double> entropy_range(const Sequence& t, std::size_t k1, std::size_t k2) {
    require_range(k1, k2, 0, "k");
    SubstringTable tab(t);
    std::vector<double> out;
    for (std::size_t k = k1; k <= k2; ++k) {
        double h = 0;
        for (const auto& w : tab.of_length(k)) {
            std::vector<double> next;
            for (Symbol a = 1; a <= tab.sigma(); ++a)
                if (std::size_t c = tab.count(append(w, a))) next.push_back(static_cast<double>(c));
            double total = std::accumulate(next.begin(), next.end(), 0.0);
            for (double c : next) h += c * std::log2(total / c);
        }
        out.push_back(h / static_cast<double>(tab.length()));
    }
    return out;
}

double kmer_kernel(const Sequence& t1, const Sequence& t2, std::size_t k) {
    require_same_alphabet(t1, t2);
    if (k < 1) throw InvalidArgument("k must be >= 1");
    SubstringTable a(t1), b(t2);
    return cosine_of(kmer_vector(a, k), kmer_vector(b, k), "sequence shorter than k");
}

KernelSeries kmer_kernel_range(const Sequence& t1, const Sequence& t2, std::size_t k1, std::size_t k2) {
    require_same_alphabet(t1, t2);
    require_range(k1, k2, 1, "k");
    SubstringTable a(t1), b(t2);
    KernelSeries out;
    for (std::size_t k = k1; k <= k2; ++k) {
        try {
            out.emplace_back(cosine_of(kmer_vector(a, k), kmer_vector(b, k), ""));
        } catch (const ZeroDenominator&) {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

double substring_kernel(const Sequence& t1, const Sequence& t2) {
    return weighted_substring_kernel(t1, t2, WeightSpec::uniform());
}

double weighted_substring_kernel(const Sequence& t1, const Sequence& t2, const WeightSpec& w) {
    require_same_alphabet(t1, t2);
    w.validate(t1.sigma);
    SubstringTable a(t1), b(t2);
    std::map<Word, double> x1, x2;
    for (const auto& [word, c] : a.counts()) x1[word] = weight_of(w, word) * static_cast<double>(c);
    for (const auto& [word, c] : b.counts()) x2[word] = weight_of(w, word) * static_cast<double>(c);
    return cosine_of(x1, x2, "all weights vanish on a sequence");
}

double d2s_distance(const Sequence& t1, const Sequence& t2, std::size_t k, const std::vector<double>& q) {
    return d2_sum(t1, t2, k, q, [](double x1, double x2, double, double, double) {
        double d = std::sqrt(x1 * x1 + x2 * x2);
        return d == 0 ? 0.0 : x1 * x2 / d;
    });
}

double d2star_distance(const Sequence& t1, const Sequence& t2, std::size_t k, const std::vector<double>& q) {
    return d2_sum(t1, t2, k, q, [](double x1, double x2, double qw, double e1, double e2) {
        return x1 * x2 / (std::sqrt(e1 * e2) * qw);
    });
}

std::set<Word> maws(const Sequence& t) {
    SubstringTable tab(t);
    std::size_t limit = tab.longest_repeat();
    std::set<Word> out;
    auto scan = [&](std::size_t inner) {
        std::size_t found = 0;
        for (const auto& w : tab.of_length(inner))
            for (Symbol a = 1; a <= tab.sigma(); ++a) {
                Word aw = prepend(a, w);
                if (!tab.count(aw)) continue;
                for (Symbol b = 1; b <= tab.sigma(); ++b) {
                    Word v = append(aw, b);
                    if (tab.count(append(w, b)) && !tab.count(v)) {
                        out.insert(v);
                        ++found;
                    }
                }
            }
        return found;
    };
    for (std::size_t inner = 0; inner <= limit; ++inner) scan(inner);
    if (scan(limit + 1) != 0) throw std::logic_error("minimal absent word longer than longest repeat + 2");
    return out;
}

std::int64_t maw_count(const Sequence& t) { return static_cast<std::int64_t>(maws(t).size()); }

namespace {

std::size_t intersection_size(const std::set<Word>& a, const std::set<Word>& b) {
    std::size_t n = 0;
    for (const auto& w : a) n += b.count(w);
    return n;
}

}  // namespace

double maw_jaccard(const Sequence& t1, const Sequence& t2) {
    require_same_alphabet(t1, t2);
    auto a = maws(t1), b = maws(t2);
    std::set<Word> uni = a;
    uni.insert(b.begin(), b.end());
    if (uni.empty()) return 1.0;
    return static_cast<double>(intersection_size(a, b)) / static_cast<double>(uni.size());
}

double maw_cosine(const Sequence& t1, const Sequence& t2) {
    require_same_alphabet(t1, t2);
    auto a = maws(t1), b = maws(t2);
    if (a.empty() && b.empty()) return 1.0;
    return cosine(static_cast<double>(intersection_size(a, b)), static_cast<double>(a.size()),
                  static_cast<double>(b.size()), "one sequence has no minimal absent words");
}

std::map<Word, double> zscores(const Sequence& t, GMode mode) {
    SubstringTable tab(t);
    std::vector<Word> infixes{Word{}};
    for (const auto& [w, c] : tab.counts()) infixes.push_back(w);
    std::map<Word, double> z;
    for (const auto& w : infixes)
        for (Symbol a = 1; a <= tab.sigma(); ++a) {
            Word aw = prepend(a, w);
            if (!tab.count(aw)) continue;
            for (Symbol b = 1; b <= tab.sigma(); ++b) {
                Word wb = append(w, b);
                if (!tab.count(wb)) continue;
                Word v = append(aw, b);
                double score;
                if (mode == GMode::exact) {
                    double est = markov_estimate(tab, v);
                    score = (prob(tab, v) - est) / est;
                } else {
                    score = static_cast<double>(tab.count(v)) * static_cast<double>(tab.count(w)) /
                                (static_cast<double>(tab.count(aw)) * static_cast<double>(tab.count(wb))) -
                            1.0;
                }
                if (score != 0) z[v] = score;
            }
        }
    return z;
}

double markov_kernel(const Sequence& t1, const Sequence& t2, GMode mode) {
    require_same_alphabet(t1, t2);
    return cosine_of(zscores(t1, mode), zscores(t2, mode), "z-score vector is zero");
}

std::vector<double> kl_divergence_range(const Sequence& t, std::size_t k1, std::size_t k2) {
    require_range(k1, k2, 2, "k");
    return kl_values(SubstringTable(t), k1, k2);
}

std::int64_t calibrate_kmax(const Sequence& t, double tau, std::size_t kcap) {
    if (!(tau > 0)) throw InvalidArgument("tau must be > 0");
    if (kcap < 2) throw InvalidArgument("kcap must be >= 2");
    auto kl = kl_values(SubstringTable(t), 2, kcap);
    for (std::size_t k = 2; k <= kcap; ++k) {
        double tail = std::accumulate(kl.begin() + static_cast<std::ptrdiff_t>(k - 2), kl.end(), 0.0);
        if (tail < tau) return static_cast<std::int64_t>(k);
    }
    return static_cast<std::int64_t>(kcap + 1);
}

std::int64_t calibrate_kmin(const Sequence& t, std::size_t kcap) {
    if (kcap < 1) throw InvalidArgument("kcap must be >= 1");
    SubstringTable tab(t);
    std::size_t best_k = 1, best = 0;
    for (std::size_t k = 1; k <= kcap; ++k) {
        std::size_t repeated = 0;
        for (const auto& w : tab.of_length(k)) repeated += tab.count(w) >= 2;
        if (repeated > best) {
            best = repeated;
            best_k = k;
        }
    }
    return static_cast<std::int64_t>(best_k);
}

MeasureValue oracle_measure(const std::string& name, std::span<const Sequence> in, const MeasureParams& p) {
    std::size_t arity = measure_arity(name);
    if (in.size() != arity)
        throw InvalidArgument(name + " expects " + std::to_string(arity) + " sequence(s), got " +
                              std::to_string(in.size()));
    if (name == "kmer_complexity") return kmer_complexity(in[0], p.k);
    if (name == "substring_complexity") return substring_complexity(in[0]);
    if (name == "kmer_profile") return kmer_profile(in[0], p.k1, p.k2, p.f1, p.f2);
    if (name == "entropy_range") return entropy_range(in[0], p.k1, p.k2);
    if (name == "maw_count") return maw_count(in[0]);
    if (name == "maw_enumerate") {
        auto s = maws(in[0]);
        return std::vector<Word>(s.begin(), s.end());
    }
    if (name == "kl_divergence_range") return kl_divergence_range(in[0], p.k1, p.k2);
    if (name == "calibrate_kmax") return calibrate_kmax(in[0], p.tau, p.kcap);
    if (name == "calibrate_kmin") return calibrate_kmin(in[0], p.kcap);
    if (name == "kmer_kernel") return kmer_kernel(in[0], in[1], p.k);
    if (name == "kmer_kernel_range") return kmer_kernel_range(in[0], in[1], p.k1, p.k2);
    if (name == "substring_kernel") return substring_kernel(in[0], in[1]);
    if (name == "weighted_substring_kernel") return weighted_substring_kernel(in[0], in[1], p.weight);
    if (name == "d2s_distance") return d2s_distance(in[0], in[1], p.k, p.q);
    if (name == "d2star_distance") return d2star_distance(in[0], in[1], p.k, p.q);
    if (name == "maw_jaccard") return maw_jaccard(in[0], in[1]);
    if (name == "maw_cosine") return maw_cosine(in[0], in[1]);
    if (name == "markov_kernel") return markov_kernel(in[0], in[1], p.zscore.g_mode);
    throw InvalidArgument("unknown measure '" + name + "'");
}

}  // namespace bwtk::oracle
