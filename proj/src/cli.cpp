#include "bwtk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "bwtk/bwt_index.hpp"
#include "bwtk/kernels.hpp"
#include "bwtk/oracle.hpp"
#include "bwtk/text.hpp"

namespace bwtk::cli {

namespace {

struct Config {
    std::string command;
    std::string action;
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::optional<std::string> alphabet;
    std::string output = "tsv";
    int precision = 12;
    unsigned jobs = 1;
    std::string kinds;
    std::optional<std::size_t> k;
    std::optional<std::string> k_range;
    std::optional<std::string> f_range;
    std::string weight = "uniform";
    std::optional<std::string> q;
    std::string g = "unit";
    std::optional<double> tau;
    std::size_t kcap = 8;
    std::string out_path;
    bool oracle = false;
};

// ---------------------------------------------------------------- inputs

/// One input string, as bytes to be mapped or as a stored index.
struct Source {
    std::string name;
    std::optional<std::string> bytes;
    std::optional<BwtIndex> index;
};

/// A mapped sequence with its index; the alphabet is unknown for stored indexes.
struct Subject {
    std::string name;
    Sequence sequence;
    std::optional<AlphabetMap> alphabet;
    std::shared_ptr<FmIndex> index;
};

std::vector<Source> read_sources(const std::vector<std::string>& paths, const std::string& format) {
    std::vector<Source> out;
    for (const auto& path : paths) {
        if (!std::filesystem::is_regular_file(path)) throw InputError("cannot read '" + path + "'");
        if (has_bwt_magic(path)) {
            out.push_back({std::filesystem::path(path).stem().string(), std::nullopt, load_bwt(path)});
            continue;
        }
        std::ifstream in(path, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (!in.good() && !in.eof()) throw InputError("cannot read '" + path + "'");
        InputFormat fmt = format == "fasta" ? InputFormat::fasta
                          : format == "raw" ? InputFormat::raw
                                            : detect_format(text);
        auto records = parse_input(text, fmt);
        for (std::size_t i = 0; i < records.size(); ++i) {
            std::string name = records[i].name;
            if (name.empty()) {
                name = std::filesystem::path(path).filename().string();
                if (records.size() > 1) name += ":" + std::to_string(i + 1);
            }
            out.push_back({std::move(name), std::move(records[i].bytes), std::nullopt});
        }
    }
    return out;
}

/// Recovers T from a stored index (for the oracle backend).
Sequence sequence_of(const FmIndex& fm, const std::string& name) {
    std::vector<Symbol> rev;
    rev.reserve(fm.text_length());
    fm.for_each_symbol_backward([&](Symbol c) { rev.push_back(c); });
    std::reverse(rev.begin(), rev.end());
    return make_sequence(std::move(rev), fm.sigma(), name);
}

/// Maps the sources; `shared` forces one alphabet across all of them.
std::vector<Subject> prepare(std::vector<Source> sources, const Config& cfg, bool shared) {
    std::optional<std::string> alphabet = cfg.alphabet;
    if (shared && !alphabet) {
        std::vector<std::string_view> raws;
        for (const auto& s : sources)
            if (s.bytes) raws.push_back(*s.bytes);
        if (raws.size() == sources.size()) alphabet = union_alphabet(raws);
    }
    std::vector<Subject> out;
    for (auto& s : sources) {
        Subject sub;
        sub.name = s.name;
        if (s.index) {
            sub.index = std::make_shared<FmIndex>(std::move(*s.index));
            sub.sequence = sequence_of(*sub.index, s.name);
        } else {
            auto mapped = alphabet ? map_alphabet(*s.bytes, std::string_view(*alphabet)) : map_alphabet(*s.bytes);
            mapped.sequence.name = s.name;
            sub.sequence = std::move(mapped.sequence);
            sub.alphabet = std::move(mapped.alphabet);
        }
        out.push_back(std::move(sub));
    }
    if (shared && out.size() == 2 && out[0].sequence.sigma != out[1].sequence.sigma)
        throw InvalidArgument("the two inputs use different alphabet sizes (" +
                              std::to_string(out[0].sequence.sigma) + " vs " +
                              std::to_string(out[1].sequence.sigma) + ")");
    return out;
}

/// Runs fn(0..count-1) on up to `jobs` threads; rethrows the first failure.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void build_indexes(std::vector<Subject>& subjects, const Config& cfg) {
    if (cfg.oracle) return;
    parallel_for(subjects.size(), cfg.jobs, [&](std::size_t i) {
        if (!subjects[i].index) subjects[i].index = std::make_shared<FmIndex>(subjects[i].sequence);
    });
}

// ---------------------------------------------------------------- records

struct Field {
    std::string key;
    std::string text;
    bool quoted = false;  // JSON string rather than number / null
};

struct Record {
    std::string input;
    std::vector<Field> fields;  // measure first, value last
};

class Formatter {
  public:
    explicit Formatter(int precision) : precision_(precision) {}

    std::string real(double v) const {
        if (!std::isfinite(v)) return "NA";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision_, v);
        // avoid "-0.000..." for values that round to zero
        std::string s = buf;
        if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
        return s;
    }

  private:
    int precision_;
};

Field text_field(std::string key, std::string value) { return {std::move(key), std::move(value), true}; }
Field number_field(std::string key, std::string value) { return {std::move(key), std::move(value), false}; }
Field int_field(std::string key, long long v) { return number_field(std::move(key), std::to_string(v)); }

std::string json_string(const std::string& s) {
    return nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_tsv(std::ostream& out, const std::vector<Record>& records, bool headers) {
    std::string current;
    bool first = true;
    for (const auto& r : records) {
        if (headers && (first || r.input != current)) out << "# " << r.input << '\n';
        first = false;
        current = r.input;
        for (std::size_t i = 0; i < r.fields.size(); ++i) out << (i ? "\t" : "") << r.fields[i].text;
        out << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<Record>& records) {
    out << "{\"results\":[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << (i ? ",\n" : "\n") << "{\"input\":" << json_string(r.input);
        for (const auto& f : r.fields) {
            out << ',' << json_string(f.key) << ':';
            if (f.quoted)
                out << json_string(f.text);
            else
                out << (f.text == "NA" ? "null" : f.text);
        }
        out << '}';
    }
    out << "\n]}\n";
}

// ---------------------------------------------------------------- parameters

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, const char* what) {
    auto number = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument(std::string("bad ") + what + " range '" + text + "' (expected N or N:M)");
        return static_cast<std::size_t>(std::stoull(s));
    };
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        auto v = number(text);
        return {v, v};
    }
    auto lo = number(text.substr(0, colon)), hi = number(text.substr(colon + 1));
    if (lo > hi) throw InvalidArgument(std::string("empty ") + what + " range '" + text + "'");
    return {lo, hi};
}

/// -k or --k-range, whichever is given; `fallback` when neither is.
std::pair<std::size_t, std::size_t> k_bounds(const Config& cfg, std::optional<std::pair<std::size_t, std::size_t>> fallback) {
    if (cfg.k && cfg.k_range) throw InvalidArgument("give either -k or --k-range, not both");
    if (cfg.k) return {*cfg.k, *cfg.k};
    if (cfg.k_range) return parse_range(*cfg.k_range, "k");
    if (fallback) return *fallback;
    throw InvalidArgument("missing -k or --k-range");
}

std::vector<double> parse_q(const std::string& text) {
    std::vector<double> q;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != item.size()) throw InvalidArgument("bad probability '" + item + "'");
        q.push_back(v);
    }
    return q;
}

std::vector<std::string> split_kinds(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw InvalidArgument("--kind needs at least one measure");
    return out;
}

// ---------------------------------------------------------------- measures

/// Evaluates a named measure on one or two subjects with the chosen backend.
MeasureValue evaluate(const Config& cfg, const std::string& name, const std::vector<const Subject*>& in,
                      const MeasureParams& p) {
    if (cfg.oracle) {
        std::vector<Sequence> seqs;
        for (auto* s : in) seqs.push_back(s->sequence);
        return oracle::oracle_measure(name, seqs, p);
    }
    std::vector<const FmIndex*> idx;
    for (auto* s : in) idx.push_back(s->index.get());
    return compute_measure(name, idx, p);
}

std::string word_text(const Subject& s, const Word& w) {
    if (s.alphabet) return s.alphabet->decode(w);
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "." : "") + std::to_string(w[i]);
    return out;
}

using Task = std::function<std::vector<Record>()>;

std::string tau_text(double tau) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, tau);
    return {buf, res.ptr};
}

void add_single_tasks(const Config& cfg, const Formatter& fmt, const Subject& s, std::vector<Task>& tasks) {
    const std::string& input = s.name;
    const Subject* subject = &s;
    auto one = [&cfg, subject](const std::string& name, const MeasureParams& p) {
        return evaluate(cfg, name, {subject}, p);
    };

    if (cfg.command == "complexity") {
        for (const auto& kind : split_kinds(cfg.kinds)) {
            if (kind == "kmer") {
                auto [k1, k2] = k_bounds(cfg, std::nullopt);
                tasks.push_back([=] {
                    std::vector<Record> out;
                    for (std::size_t k = k1; k <= k2; ++k) {
                        MeasureParams p;
                        p.k = k;
                        auto v = std::get<std::int64_t>(one("kmer_complexity", p));
                        out.push_back({input, {text_field("measure", "kmer"), int_field("k", (long long)k),
                                               int_field("value", v)}});
                    }
                    return out;
                });
            } else if (kind == "substring") {
                tasks.push_back([=] {
                    auto v = std::get<std::int64_t>(one("substring_complexity", {}));
                    return std::vector<Record>{{input, {text_field("measure", "substring"), int_field("value", v)}}};
                });
            } else {
                throw InvalidArgument("unknown complexity kind '" + kind + "' (expected kmer or substring)");
            }
        }
    } else if (cfg.command == "profile") {
        MeasureParams p;
        std::tie(p.k1, p.k2) = k_bounds(cfg, std::nullopt);
        if (!cfg.f_range) throw InvalidArgument("profile needs --f-range");
        std::tie(p.f1, p.f2) = parse_range(*cfg.f_range, "f");
        tasks.push_back([=] {
            auto m = std::get<ProfileMatrix>(one("kmer_profile", p));
            std::vector<Record> out;
            for (std::size_t k = m.k1; k <= m.k2; ++k)
                for (std::size_t f = m.f1; f <= m.f2; ++f)
                    out.push_back({input, {text_field("measure", "profile"), int_field("k", (long long)k),
                                           int_field("f", (long long)f), int_field("count", m.at(k, f))}});
            return out;
        });
    } else if (cfg.command == "entropy" || cfg.command == "kl") {
        const bool kl = cfg.command == "kl";
        MeasureParams p;
        std::tie(p.k1, p.k2) = k_bounds(cfg, std::nullopt);
        tasks.push_back([=] {
            auto v = std::get<std::vector<double>>(one(kl ? "kl_divergence_range" : "entropy_range", p));
            std::vector<Record> out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out.push_back({input, {text_field("measure", kl ? "kl" : "entropy"),
                                       int_field("k", (long long)(p.k1 + i)), number_field("value", fmt.real(v[i]))}});
            return out;
        });
    } else if (cfg.command == "maw") {
        if (cfg.action == "count") {
            tasks.push_back([=] {
                auto v = std::get<std::int64_t>(one("maw_count", {}));
                return std::vector<Record>{{input, {text_field("measure", "maw_count"), int_field("value", v)}}};
            });
        } else {
            tasks.push_back([=] {
                auto words = std::get<std::vector<Word>>(one("maw_enumerate", {}));
                std::vector<Record> out;
                for (const auto& w : words)
                    out.push_back({input, {text_field("measure", "maw"), text_field("word", word_text(*subject, w))}});
                return out;
            });
        }
    } else if (cfg.command == "calibrate") {
        MeasureParams p;
        p.kcap = cfg.kcap;
        if (cfg.action == "kmin") {
            tasks.push_back([=] {
                auto v = std::get<std::int64_t>(one("calibrate_kmin", p));
                return std::vector<Record>{{input, {text_field("measure", "kmin"), int_field("kcap", (long long)p.kcap),
                                                    int_field("value", v)}}};
            });
        } else {
            if (!cfg.tau) throw InvalidArgument("calibrate kmax needs --tau");
            p.tau = *cfg.tau;
            tasks.push_back([=] {
                auto v = std::get<std::int64_t>(one("calibrate_kmax", p));
                return std::vector<Record>{{input, {text_field("measure", "kmax"), number_field("tau", tau_text(p.tau)),
                                                    int_field("kcap", (long long)p.kcap), int_field("value", v)}}};
            });
        }
    }
}

void add_pair_tasks(const Config& cfg, const Formatter& fmt, const Subject& a, const Subject& b,
                    std::vector<Task>& tasks) {
    const std::string input = a.name + " " + b.name;
    const Subject* pa = &a;
    const Subject* pb = &b;
    auto two = [&cfg, pa, pb](const std::string& name, const MeasureParams& p) {
        return evaluate(cfg, name, {pa, pb}, p);
    };
    auto real_record = [=](std::vector<Field> fields, double v) {
        fields.push_back(number_field("value", fmt.real(v)));
        return std::vector<Record>{{input, std::move(fields)}};
    };

    for (const auto& kind : split_kinds(cfg.kinds)) {
        MeasureParams p;
        if (kind == "kmer") {
            if (cfg.k_range) {
                std::tie(p.k1, p.k2) = k_bounds(cfg, std::nullopt);
                tasks.push_back([=] {
                    auto v = std::get<KernelSeries>(two("kmer_kernel_range", p));
                    std::vector<Record> out;
                    for (std::size_t i = 0; i < v.size(); ++i)
                        out.push_back({input, {text_field("measure", "kmer"), int_field("k", (long long)(p.k1 + i)),
                                               number_field("value", v[i] ? fmt.real(*v[i]) : "NA")}});
                    return out;
                });
            } else {
                p.k = k_bounds(cfg, std::nullopt).first;
                tasks.push_back([=] {
                    return real_record({text_field("measure", "kmer"), int_field("k", (long long)p.k)},
                                       std::get<double>(two("kmer_kernel", p)));
                });
            }
        } else if (kind == "substring") {
            tasks.push_back([=] {
                return real_record({text_field("measure", "substring")}, std::get<double>(two("substring_kernel", p)));
            });
        } else if (kind == "weighted") {
            p.weight = WeightSpec::parse(cfg.weight);
            tasks.push_back([=] {
                return real_record({text_field("measure", "weighted"), text_field("weight", p.weight.describe())},
                                   std::get<double>(two("weighted_substring_kernel", p)));
            });
        } else if (kind == "d2s" || kind == "d2star") {
            p.k = k_bounds(cfg, std::nullopt).first;
            const std::size_t sigma = a.sequence.sigma;
            p.q = cfg.q ? parse_q(*cfg.q) : std::vector<double>(sigma, 1.0 / static_cast<double>(sigma));
            const std::string name = kind == "d2s" ? "d2s_distance" : "d2star_distance";
            tasks.push_back([=] {
                return real_record({text_field("measure", kind), int_field("k", (long long)p.k)},
                                   std::get<double>(two(name, p)));
            });
        } else if (kind == "markov") {
            p.zscore.g_mode = cfg.g == "exact" ? GMode::exact : GMode::unit;
            tasks.push_back([=] {
                return real_record({text_field("measure", "markov"), text_field("g", cfg.g)},
                                   std::get<double>(two("markov_kernel", p)));
            });
        } else if (kind == "maw-jaccard" || kind == "maw-cosine") {
            const std::string name = kind == "maw-jaccard" ? "maw_jaccard" : "maw_cosine";
            tasks.push_back([=] { return real_record({text_field("measure", kind)}, std::get<double>(two(name, p))); });
        } else {
            throw InvalidArgument("unknown kernel kind '" + kind +
                                  "' (expected kmer, substring, weighted, d2s, d2star, markov, maw-jaccard, maw-cosine)");
        }
    }
}

int run_measures(const Config& cfg, std::ostream& out) {
    const bool pair = cfg.command == "kernel";
    auto sources = read_sources(cfg.inputs, cfg.format);
    if (sources.empty()) throw InputError("no input sequences");
    if (pair && sources.size() != 2)
        throw InvalidArgument("kernel needs exactly two sequences (two files with one record each, or one file "
                              "with two records); got " + std::to_string(sources.size()));
    auto subjects = prepare(std::move(sources), cfg, pair);
    build_indexes(subjects, cfg);

    Formatter fmt(cfg.precision);
    std::vector<Task> tasks;
    if (pair) {
        add_pair_tasks(cfg, fmt, subjects[0], subjects[1], tasks);
    } else {
        for (const auto& s : subjects) add_single_tasks(cfg, fmt, s, tasks);
    }

    std::vector<std::vector<Record>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
        try {
            results[i] = tasks[i]();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });

    // output stops at the first failing task so it never depends on timing
    std::vector<Record> records;
    std::exception_ptr failure;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i]) {
            failure = errors[i];
            break;
        }
        records.insert(records.end(), results[i].begin(), results[i].end());
    }
    if (cfg.output == "json")
        write_json(out, records);
    else
        write_tsv(out, records, !pair && subjects.size() > 1);
    if (failure) std::rethrow_exception(failure);
    return 0;
}

int run_index(const Config& cfg, std::ostream& out) {
    auto sources = read_sources(cfg.inputs, cfg.format);
    if (sources.size() != 1) throw InvalidArgument("index needs exactly one sequence");
    auto subjects = prepare(std::move(sources), cfg, false);
    const Subject& s = subjects[0];
    BwtIndex bwt = s.index ? s.index->bwt() : build_bwt(s.sequence);
    if (cfg.action == "build") {
        if (cfg.out_path.empty()) throw InvalidArgument("index build needs -o/--out");
        save_bwt(cfg.out_path, bwt);
        return 0;
    }
    auto join = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::vector<Record> records{
        {s.name, {text_field("field", "n"), int_field("value", (long long)bwt.n)}},
        {s.name, {text_field("field", "sigma"), int_field("value", (long long)bwt.sigma)}},
        {s.name, {text_field("field", "c"), text_field("value", join(bwt.c))}},
        {s.name, {text_field("field", "bwt"), text_field("value", join(bwt.bwt))}},
    };
    if (s.alphabet) records.push_back({s.name, {text_field("field", "alphabet"), text_field("value", s.alphabet->bytes())}});
    if (cfg.output == "json")
        write_json(out, records);
    else
        write_tsv(out, records, false);
    return 0;
}

// ---------------------------------------------------------------- parser

void add_common(CLI::App* sub, Config& cfg, bool with_inputs = true) {
    sub->add_option("--format", cfg.format, "Input format (FASTA is detected by a leading '>')")
        ->check(CLI::IsMember({"auto", "fasta", "raw"}))
        ->capture_default_str();
    sub->add_option("--alphabet", cfg.alphabet, "Explicit alphabet bytes, in symbol order");
    sub->add_option("--output", cfg.output, "Output encoding")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    sub->add_option("--precision", cfg.precision, "Digits after the decimal point")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    if (with_inputs) sub->add_option("inputs", cfg.inputs, "Input files (FASTA, raw text or BWTK1 index)")->required();
}

void add_k(CLI::App* sub, Config& cfg) {
    sub->add_option("-k", cfg.k, "Word length");
    sub->add_option("--k-range", cfg.k_range, "Word lengths K1:K2");
}

int code_for_parse_error(const CLI::ParseError& e) { return e.get_exit_code() == 0 ? 0 : 1; }

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Config cfg;
    std::vector<std::string> args = raw_args;
    if (!args.empty() && args.front() == "oracle") {
        cfg.oracle = true;
        args.erase(args.begin());
    }

    CLI::App app{"Alignment-free string kernels and complexity measures over BWT indexes", "bwtk"};
    app.require_subcommand(1, 1);

    auto* complexity = app.add_subcommand("complexity", "Distinct k-mer or substring counts");
    complexity->add_option("--kind", cfg.kinds, "kmer and/or substring, comma separated")->required();
    add_k(complexity, cfg);
    add_common(complexity, cfg);

    auto* kernel = app.add_subcommand("kernel", "Similarity or distance between two sequences");
    kernel->add_option("--kind", cfg.kinds,
                       "Comma separated: kmer, substring, weighted, d2s, d2star, markov, maw-jaccard, maw-cosine")
        ->required();
    add_k(kernel, cfg);
    kernel->add_option("--weight", cfg.weight, "uniform, exp:EPS, band:KMIN:KMAX or charscore:Q1,Q2,...")
        ->capture_default_str();
    kernel->add_option("--q", cfg.q, "Symbol probabilities for d2s/d2star (default uniform)");
    kernel->add_option("--g", cfg.g, "Markov length correction")
        ->check(CLI::IsMember({"unit", "exact"}))
        ->capture_default_str();
    add_common(kernel, cfg);

    auto* profile = app.add_subcommand("profile", "Number of k-mers by frequency");
    add_k(profile, cfg);
    profile->add_option("--f-range", cfg.f_range, "Frequencies F1:F2 (the last column counts >= F2)")->required();
    add_common(profile, cfg);

    auto* entropy = app.add_subcommand("entropy", "k-th order empirical entropy");
    add_k(entropy, cfg);
    add_common(entropy, cfg);

    auto* maw = app.add_subcommand("maw", "Minimal absent words");
    maw->add_option("mode", cfg.action, "count or list")->check(CLI::IsMember({"count", "list"}))->required();
    add_common(maw, cfg);

    auto* kl = app.add_subcommand("kl", "KL divergence from the order-(k-2) Markov estimate");
    add_k(kl, cfg);
    add_common(kl, cfg);

    auto* calibrate = app.add_subcommand("calibrate", "Choose k from the data");
    calibrate->add_option("mode", cfg.action, "kmin or kmax")->check(CLI::IsMember({"kmin", "kmax"}))->required();
    calibrate->add_option("--tau", cfg.tau, "KL tail threshold (kmax)");
    calibrate->add_option("--kcap", cfg.kcap, "Largest k considered")->capture_default_str();
    add_common(calibrate, cfg);

    auto* index = app.add_subcommand("index", "Build or inspect a stored BWT index");
    index->add_option("mode", cfg.action, "build or dump")->check(CLI::IsMember({"build", "dump"}))->required();
    index->add_option("-o,--out", cfg.out_path, "Output path (build)");
    add_common(index, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return code_for_parse_error(e);
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command == "index") return run_index(cfg, out);
        return run_measures(cfg, out);
    } catch (const ComputationError& e) {
        err << "bwtk: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        err << "bwtk: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        err << "bwtk: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "bwtk: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bwtk::cli
