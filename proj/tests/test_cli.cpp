#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "bergman_cli_test";

struct Outcome {
    int code;
    std::string out;
};

Outcome cli(const std::string& args)
{
    fs::create_directories(kWork);
    const auto log = kWork / "stdout.txt";
    const std::string cmd = std::string("\"") + BERGMAN_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s)
{
    int n = 0;
    for (char c : s) {
        n += c == '\n';
    }
    return n;
}

} // namespace

TEST_CASE("list")
{
    const auto all = cli("list");
    CHECK(all.code == 0);
    CHECK(count_lines(all.out) == 12);
    CHECK(all.out.find("thm-3.11") != std::string::npos);
    const auto s4 = cli("list --section 4");
    CHECK(s4.code == 0);
    CHECK(count_lines(s4.out) == 5);
    CHECK(cli("list --section 42").out.empty());
}

TEST_CASE("usage and configuration errors exit with 2")
{
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("run no-such-experiment").code == 2);
    CHECK(cli("run example-4.1 --basis-sizes 10,x").code == 2);
    const auto cfg = kWork / "bad.json";
    fs::create_directories(kWork);
    std::ofstream(cfg) << R"({"schema_version": 1, "experiment": "example-4.1", "unknown": 1})";
    const auto r = cli("run \"" + cfg.string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.out.find("unknown") != std::string::npos);
}

TEST_CASE("seeded runs are byte-identical")
{
    const auto a = kWork / "seed_a";
    const auto b = kWork / "seed_b";
    const auto c = kWork / "seed_c";
    fs::remove_all(a);
    fs::remove_all(b);
    fs::remove_all(c);
    CHECK(cli("run geometry-selftest --seed 11 --out \"" + a.string() + "\"").code == 0);
    CHECK(cli("run geometry-selftest --seed 11 --out \"" + b.string() + "\"").code == 0);
    CHECK(cli("run geometry-selftest --seed 12 --out \"" + c.string() + "\"").code == 0);
    CHECK(slurp(a / "report.csv") == slurp(b / "report.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK(slurp(a / "report.csv") != slurp(c / "report.csv"));
}

TEST_CASE("config file run")
{
    const auto cfg = kWork / "atom.json";
    const auto out = kWork / "atom_out";
    fs::remove_all(out);
    std::ofstream(cfg) << R"({"schema_version": 1, "experiment": "example-4.1", "basis_sizes": [8, 16],)"
                       << R"( "out_dir": ")" << out.string() << "\"}";
    const auto r = cli("run \"" + cfg.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary.at("verdict") == "PASS");
    CHECK(fs::exists(out / "singular_values.csv"));
}

TEST_CASE("polyanalytic run writes the operator")
{
    const auto out = kWork / "poly";
    fs::remove_all(out);
    const auto r = cli("run poly-equiv --j 2 --out \"" + out.string() + "\"");
    CHECK(r.code == 0);
    REQUIRE(fs::exists(out / "K_operator.json"));
    const auto k = nlohmann::json::parse(slurp(out / "K_operator.json"));
    CHECK(k.at("j") == 2);
    CHECK(k.contains("terms"));
    CHECK(k.contains("generators"));
    CHECK(slurp(out / "report.csv").rfind("# poly-equiv: ", 0) == 0);
}
