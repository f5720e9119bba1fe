#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "fmm");
    std::ostringstream out;
    std::ostringstream err;
    const int code = fmm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("fmm_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("solve: corner source on unit speed gives i*h along the axis") {
    TempDir dir;
    const auto out = dir / "t.csv";
    const auto r = run({"solve", "--n", "10", "--speed", "constant", "--boundary", "0,0",
                        "--queue", "exact", "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("pops") != std::string::npos);
    const auto t = read_csv(out);
    REQUIRE(t.size() == 11u);
    CHECK(t[0][0] == 0.0);
    for (int i = 1; i <= 10; ++i) {
        CHECK(t[i][0] == doctest::Approx(i * 0.1).epsilon(1e-14));
        CHECK(t[0][i] == doctest::Approx(i * 0.1).epsilon(1e-14));
    }
}

TEST_CASE("solve: untidy solution is never below the exact one") {
    TempDir dir;
    const std::vector<std::string> problem{"--n", "30", "--speed", "inv-uniform", "--speed-param",
                                           "seed=4", "--boundary", "30,0;0,30"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> a{"solve"};
        a.insert(a.end(), problem.begin(), problem.end());
        a.insert(a.end(), extra.begin(), extra.end());
        return a;
    };
    REQUIRE(run(with({"--queue", "exact", "--out", (dir / "e.raw").string(), "--format", "raw"}))
                .code == 0);
    REQUIRE(run(with({"--queue", "untidy", "--buckets", "16", "--out", (dir / "u.raw").string(),
                      "--format", "raw"}))
                .code == 0);
    const std::string e = slurp(dir / "e.raw");
    const std::string u = slurp(dir / "u.raw");
    REQUIRE(e.size() == 31u * 31u * 8u);
    REQUIRE(u.size() == e.size());
    for (std::size_t k = 0; k < e.size(); k += 8) {
        double a = 0;
        double b = 0;
        std::memcpy(&a, e.data() + k, 8);
        std::memcpy(&b, u.data() + k, 8);
        CHECK(b >= a - 1e-12);
    }
}

TEST_CASE("usage errors exit 2") {
    TempDir dir;
    const auto out = (dir / "t.csv").string();
    CHECK(run({"solve", "--n", "10", "--speed", "constant", "--boundary", "0,0", "--queue",
               "untidy", "--out", out})
              .code == 2);
    CHECK(run({"solve", "--n", "10", "--speed", "constant", "--boundary", "0,0", "--queue",
               "exact", "--buckets", "4", "--out", out})
              .code == 2);
    CHECK(run({"solve", "--n", "10", "--speed", "constant", "--boundary", "11,0", "--queue",
               "exact", "--out", out})
              .code == 2);
    CHECK(run({"solve", "--n", "10", "--speed", "sin-ratio", "--boundary", "0,0", "--queue",
               "exact", "--out", out})
              .code == 2);
    CHECK(run({"solve", "--n", "10", "--speed", "warp", "--boundary", "0,0", "--queue", "exact",
               "--out", out})
              .code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"fig1", "--out", (dir / "no" / "such" / "dir.csv").string()}).code == 2);
    CHECK_FALSE(fs::exists(dir / "t.csv"));
}

TEST_CASE("verify examples pass") {
    auto r = run({"verify", "--n", "50", "--speed", "constant", "--boundary", "50,0", "--buckets",
                  "32"});
    CHECK(r.code == 0);
    r = run({"verify", "--n", "100", "--speed", "sin-ratio", "--speed-param", "r=16", "--boundary",
             "100,0", "--buckets", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("100,8,16,") != std::string::npos);
}

TEST_CASE("binaries: negative control fails verification") {
    const std::string args =
        " verify --n 50 --speed constant --boundary 50,0 --buckets 32";
    CHECK(shell(std::string(FMM_TOOL_PATH) + args) == 0);
    CHECK(shell(std::string(FMM_CORRUPT_PATH) + args) == 1);
    CHECK(shell(std::string(FMM_TOOL_PATH) + " solve --n 5") == 2);
}

TEST_CASE("default fig1 and fig2 outputs") {
    TempDir dir;
    REQUIRE(run({"fig1", "--out", (dir / "f1.csv").string()}).code == 0);
    std::istringstream f1(slurp(dir / "f1.csv"));
    std::string line;
    int rows = 0;
    bool header = false;
    while (std::getline(f1, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            CHECK(line == "r,n_B,n,max_rel_err,bound");
            header = true;
            continue;
        }
        ++rows;
    }
    CHECK(rows == 42);

    REQUIRE(run({"fig2", "--out", (dir / "f2.csv").string(), "--sizes", "64,128,256"}).code == 0);
    const std::string f2 = slurp(dir / "f2.csv");
    for (const char* n : {"64,", "128,", "256,"}) {
        CAPTURE(n);
        CHECK(f2.find(std::string("\n") + n) != std::string::npos);
    }
    std::istringstream lines(f2);
    int exact = 0;
    int untidy = 0;
    while (std::getline(lines, line)) {
        if (line.find(",exact,") != std::string::npos) ++exact;
        if (line.find(",untidy,") != std::string::npos) ++untidy;
    }
    CHECK(exact == 3);
    CHECK(untidy == 3);
}

TEST_CASE("repeated runs are byte-identical") {
    TempDir dir;
    const std::vector<std::vector<std::string>> commands{
        {"solve", "--n", "40", "--speed", "inv-uniform", "--boundary", "40,0", "--queue", "untidy",
         "--buckets", "40", "--format", "raw", "--out"},
        {"solve", "--n", "40", "--speed", "sin-ratio", "--speed-param", "r=8", "--boundary", "0,0",
         "--queue", "exact", "--out"},
        {"oracle", "--n", "20", "--speed", "inv-uniform", "--speed-param", "seed=9", "--boundary",
         "10,10", "--out"},
        {"verify", "--n", "30", "--speed", "sin-ratio", "--speed-param", "r=4", "--boundary",
         "30,0", "--buckets", "8", "--out"},
        {"fig1", "--n", "30", "--out"},
        {"fig2", "--sizes", "32,64", "--out"},
    };
    int k = 0;
    for (auto cmd : commands) {
        CAPTURE(cmd[0]);
        std::vector<std::string> a = cmd;
        a.push_back((dir / ("a" + std::to_string(k))).string());
        std::vector<std::string> b = cmd;
        b.push_back((dir / ("b" + std::to_string(k))).string());
        const auto ra = run(a);
        const auto rb = run(b);
        REQUIRE(ra.code == 0);
        REQUIRE(rb.code == 0);
        std::string out_b = rb.out;
        if (const auto at = out_b.find(b.back()); at != std::string::npos) {
            out_b.replace(at, b.back().size(), a.back());
        }
        CHECK(ra.out == out_b);
        CHECK(slurp(a.back()) == slurp(b.back()));
        CHECK_FALSE(slurp(a.back()).empty());
        ++k;
    }
}
