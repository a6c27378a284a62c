#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dirilab/cli.hpp"
#include "dirilab/corpus.hpp"
#include "dirilab/errors.hpp"
#include "dirilab/io.hpp"

using namespace dirilab;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("dirilab_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dirilab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("malformed config exits 1 and writes nothing") {
    Scratch s("malformed");
    auto cfg = s.write("bad.json", "{\"command\": \"hardy-stein\", \"f\": ");
    auto out = (s.dir / "out").string();
    CHECK(run_cli({"run", cfg, "--out-dir", out}) == 1);
    CHECK((!fs::exists(out) || fs::is_empty(out)));
}

TEST_CASE("hardy-stein on two_term exits 0") {
    Scratch s("hs");
    auto cfg = s.write("hs.json", R"({"command": "hardy-stein", "f": "two_term", "p": 2})");
    auto out = (s.dir / "out").string();
    REQUIRE(run_cli({"run", cfg, "--out-dir", out}) == 0);
    auto rep = parse_json_strict(slurp(fs::path(out) / "report.json"));
    CHECK(rep["verdict"] == "pass");
    for (const auto& r : rep["reports"]) CHECK(r["rel_err"].get<double>() <= 1e-2);
}

TEST_CASE("lp-boundary trace has one row per window") {
    Scratch s("lpb");
    auto cfg = s.write("lpb.json", R"({"f": "three_term", "T_list": [50, 100, 200]})");
    auto out = (s.dir / "out").string();
    int rc = run_cli({"lp-boundary", "--config", cfg, "--out-dir", out});
    CHECK((rc == 0 || rc == 2));
    std::istringstream csv(slurp(fs::path(out) / "trace.csv"));
    std::string line;
    int rows = -1; // header
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("corpus lists six unique constructible entries") {
    std::set<std::string> names;
    for (const auto& e : corpus()) {
        names.insert(e.name);
        CHECK(e.make().size() > 0);
    }
    CHECK(corpus().size() == 6);
    CHECK(names.size() == 6);
    for (const char* n : {"const", "mono2", "davenport", "two_term", "three_term", "sec2_example"}) CHECK(names.count(n) == 1);
}

TEST_CASE("reports are bit-for-bit reproducible") {
    Scratch s("repro");
    auto cfg = s.write("mc.json", R"({"f": "mono2", "xi": [0.27, 0.42], "seed": 7})");
    std::vector<std::string> reports;
    for (int k = 0; k < 2; ++k) {
        auto out = (s.dir / ("out" + std::to_string(k))).string();
        int rc = run_cli({"mean-counting", "--config", cfg, "--out-dir", out});
        CHECK((rc == 0 || rc == 2));
        reports.push_back(slurp(fs::path(out) / "report.json"));
    }
    CHECK(!reports[0].empty());
    CHECK(reports[0] == reports[1]);
}

TEST_CASE("schema errors carry json pointers") {
    try {
        parse_json_strict(R"({"f": "mono2", "grid": [0.5], "inner": {"a": 1, "a": 2}})");
        FAIL("duplicate key accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/inner/a") != std::string::npos);
    }
    try {
        run_command("hardy-stein", parse_json_strict(R"({"f": "mono2", "grid": [0.5, "x"]})"));
        FAIL("bad grid accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/grid/1") != std::string::npos);
    }
    CHECK_THROWS_AS(run_command("hardy-stein", parse_json_strict(R"({"f": "nope"})")), Error);
    CHECK_THROWS_AS(run_command("hardy-stein", parse_json_strict(R"({"f": "mono2", "colour": 1})")), Error);
}
