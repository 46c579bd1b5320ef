#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "bwtk/cli.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = bwtk::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("bwtk_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& content) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string last_column(const std::string& line) { return line.substr(line.rfind('\t') + 1); }

const std::vector<std::string> kAllKernels = {"kmer", "substring", "weighted", "d2s", "d2star",
                                              "markov", "maw-jaccard", "maw-cosine"};

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

}  // namespace

TEST_CASE("documented examples") {
    TempDir dir;
    auto a = dir.write("a.fa", ">a\naab\n");
    auto b = dir.write("b.fa", ">b\nabb\n");
    auto x = dir.write("x.fa", ">x\nabab\n");

    auto r = run({"kernel", "--kind", "kmer", "-k", "1", a, b});
    CHECK(r.code == 0);
    CHECK(r.out == "kmer\t1\t0.800000000000\n");

    r = run({"complexity", "--kind", "substring", x});
    CHECK(r.code == 0);
    CHECK(r.out == "substring\t7\n");

    r = run({"kernel", "--kind", "kmer", "-k", "9", x, b});
    CHECK(r.code == 2);
    CHECK(r.err.find("zero denominator") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("subcommand outputs") {
    TempDir dir;
    auto x = dir.write("x.txt", "abab");
    auto a = dir.write("a.fa", ">a\naab\n");

    CHECK(run({"complexity", "--kind", "kmer,substring", "--k-range", "1:2", x}).out ==
          "kmer\t1\t2\nkmer\t2\t2\nsubstring\t7\n");
    CHECK(run({"profile", "--k-range", "1:2", "--f-range", "1:2", x}).out ==
          "profile\t1\t1\t0\nprofile\t1\t2\t2\nprofile\t2\t1\t1\nprofile\t2\t2\t1\n");
    CHECK(run({"maw", "count", x}).out == "maw_count\t3\n");
    CHECK(run({"maw", "list", x}).out == "maw\taa\nmaw\tbaba\nmaw\tbb\n");
    CHECK(run({"entropy", "-k", "0", "--precision", "6", a}).out == "entropy\t0\t0.918296\n");
    CHECK(run({"calibrate", "kmin", "--kcap", "4", x}).out.rfind("kmin\t4\t", 0) == 0);
    CHECK(run({"calibrate", "kmax", "--tau", "0.1", x}).out.rfind("kmax\t0.1\t8\t", 0) == 0);

    // several inputs to a single-sequence command get block headers
    auto two = run({"maw", "count", x, a});
    CHECK(two.out == "# x.txt\nmaw_count\t3\n# a\nmaw_count\t3\n");
}

TEST_CASE("pairs from one file and union alphabet") {
    TempDir dir;
    auto both = dir.write("ab.fa", ">a\naab\n>b\nabb\n");
    CHECK(run({"kernel", "--kind", "kmer", "-k", "1", both}).out == "kmer\t1\t0.800000000000\n");

    // disjoint letters still share one alphabet
    auto p = dir.write("p.txt", "aaa");
    auto q = dir.write("q.txt", "ccc");
    auto r = run({"kernel", "--kind", "kmer", "-k", "1", p, q});
    CHECK(r.code == 0);
    CHECK(r.out == "kmer\t1\t0.000000000000\n");
}

TEST_CASE("usage errors exit 1") {
    TempDir dir;
    auto a = dir.write("a.txt", "aab");
    auto b = dir.write("b.txt", "abb");

    CHECK(run({}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({"kernel", "--kind", "kmer", "-k", "1", a}).code == 1);
    CHECK(run({"kernel", "--kind", "kmer", a, b}).code == 1);
    CHECK(run({"kernel", "--kind", "kmer", "-k", "1", "--k-range", "1:2", a, b}).code == 1);
    CHECK(run({"kernel", "--kind", "bogus", "-k", "1", a, b}).code == 1);
    CHECK(run({"kernel", "--kind", "weighted", "--weight", "exp:-1", a, b}).code == 1);
    CHECK(run({"kernel", "--kind", "d2s", "-k", "1", "--q", "0.5,0.6", a, b}).code == 1);
    CHECK(run({"profile", "--k-range", "3:1", "--f-range", "1:2", a}).code == 1);
    CHECK(run({"calibrate", "kmax", a}).code == 1);
    CHECK(run({"complexity", "--kind", "kmer", "-k", "1", dir.path("missing.txt")}).code == 1);
    CHECK(run({"complexity", "--kind", "kmer", "-k", "1", "--output", "xml", a}).code == 1);

    auto r = run({"complexity", "--kind", "kmer", "-k", "0", a});
    CHECK(r.code == 1);
    CHECK(!r.err.empty());

    CHECK(run({"--help"}).code == 0);
    CHECK(run({"kernel", "--help"}).code == 0);
}

TEST_CASE("json and tsv carry the same values") {
    TempDir dir;
    std::mt19937_64 rng(11);
    auto a = dir.write("a.txt", bwtk::testing::random_text(rng, 40, 3));
    auto b = dir.write("b.txt", bwtk::testing::random_text(rng, 35, 3));

    std::vector<std::string> base = {"kernel", "--kind", join(kAllKernels), "-k", "3", "--precision", "9", a, b};
    auto tsv = run(base);
    auto args = base;
    args.push_back("--output");
    args.push_back("json");
    auto js = run(args);
    REQUIRE(tsv.code == 0);
    REQUIRE(js.code == 0);

    auto doc = nlohmann::json::parse(js.out);
    auto rows = lines(tsv.out);
    REQUIRE(doc["results"].size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& rec = doc["results"][i];
        CHECK(rec["measure"].get<std::string>() == rows[i].substr(0, rows[i].find('\t')));
        // the raw number text is identical, not just numerically close
        auto needle = "\"value\":" + last_column(rows[i]);
        CHECK(js.out.find(needle) != std::string::npos);
    }
}

TEST_CASE("json escapes names") {
    TempDir dir;
    auto f = dir.write("q.fa", ">we\"ird\\name\nabab\n");
    auto r = run({"maw", "count", "--output", "json", f});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["results"][0]["input"] == "we\"ird\\name");
    CHECK(doc["results"][0]["value"] == 3);
}

TEST_CASE("undefined kernel range entries print NA") {
    TempDir dir;
    auto a = dir.write("a.txt", "abab");
    auto b = dir.write("b.txt", "abbabba");
    auto r = run({"kernel", "--kind", "kmer", "--k-range", "3:5", a, b});
    CHECK(r.code == 0);
    CHECK(lines(r.out).back() == "kmer\t5\tNA");
    auto js = run({"kernel", "--kind", "kmer", "--k-range", "3:5", "--output", "json", a, b});
    CHECK(nlohmann::json::parse(js.out)["results"][2]["value"].is_null());
}

TEST_CASE("deterministic output independent of --jobs") {
    TempDir dir;
    std::mt19937_64 rng(5);
    std::vector<std::string> files;
    for (int i = 0; i < 6; ++i)
        files.push_back(dir.write("s" + std::to_string(i) + ".txt", bwtk::testing::random_text(rng, 200 + 50 * i, 4)));

    std::vector<std::string> single = {"complexity", "--kind", "kmer,substring", "--k-range", "1:6"};
    single.insert(single.end(), files.begin(), files.end());
    auto serial = run(single);
    auto again = run(single);
    single.push_back("--jobs");
    single.push_back("4");
    auto parallel = run(single);
    CHECK(serial.code == 0);
    CHECK(serial.out == again.out);
    CHECK(serial.out == parallel.out);

    std::vector<std::string> pair = {"kernel", "--kind", join(kAllKernels), "-k", "3", files[0], files[1]};
    auto p1 = run(pair);
    pair.push_back("--jobs");
    pair.push_back("3");
    auto p3 = run(pair);
    CHECK(p1.code == 0);
    CHECK(p1.out == p3.out);
}

TEST_CASE("oracle backend prints the same records") {
    TempDir dir;
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto regime = bwtk::testing::random_regime(rng);
        auto a = dir.write("a.txt", bwtk::testing::random_text(rng, regime.length, regime.sigma));
        auto b = dir.write("b.txt", bwtk::testing::random_text(rng, regime.length, regime.sigma));
        CAPTURE(trial);

        // 9 digits stays clear of rounding differences between the backends
        std::vector<std::vector<std::string>> commands = {
            {"kernel", "--kind", join(kAllKernels), "-k", "2", "--precision", "9", a, b},
            {"kernel", "--kind", "weighted", "--weight", "exp:0.5", "--precision", "9", a, b},
            {"kernel", "--kind", "markov", "--g", "exact", "--precision", "9", a, b},
            {"complexity", "--kind", "kmer,substring", "--k-range", "1:5", a},
            {"profile", "--k-range", "1:4", "--f-range", "1:3", a},
            {"maw", "list", a},
            {"entropy", "--k-range", "0:4", "--precision", "9", a},
            {"calibrate", "kmin", a},
        };
        for (auto& cmd : commands) {
            auto real = run(cmd);
            cmd.insert(cmd.begin(), "oracle");
            auto ref = run(cmd);
            CAPTURE(cmd[1]);
            CHECK(real.code == ref.code);
            CHECK(real.out == ref.out);
        }
    }
}

TEST_CASE("index build and dump") {
    TempDir dir;
    auto x = dir.write("x.txt", "abab");
    auto idx = dir.path("x.bwt");
    REQUIRE(run({"index", "build", x, "-o", idx}).code == 0);
    CHECK(run({"index", "build", x}).code == 1);

    auto from_text = run({"index", "dump", x});
    auto from_index = run({"index", "dump", idx});
    CHECK(from_text.out == "n\t5\nsigma\t2\nc\t0,1,3,5\nbwt\t2,2,0,1,1\nalphabet\tab\n");
    CHECK(from_index.out == "n\t5\nsigma\t2\nc\t0,1,3,5\nbwt\t2,2,0,1,1\n");

    // stored indexes are valid inputs for every measure and for the oracle
    for (auto prefix : {std::vector<std::string>{}, std::vector<std::string>{"oracle"}}) {
        auto cmd = prefix;
        for (const char* s : {"complexity", "--kind", "kmer,substring", "--k-range", "1:3"}) cmd.push_back(s);
        auto via_text = cmd;
        via_text.push_back(x);
        cmd.push_back(idx);
        CHECK(run(cmd).out == run(via_text).out);
    }
    // without the byte alphabet, words print as symbol numbers
    CHECK(run({"maw", "list", idx}).out == "maw\t1.1\nmaw\t2.1.2.1\nmaw\t2.2\n");
}
