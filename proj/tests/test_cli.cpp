#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "groth/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = groth::cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

// Runs the real binary and returns its exit status.
int run_binary(const std::string& args) {
    const std::string cmd = std::string(GROTH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "groth_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("help and usage errors") {
    const Result help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("classify") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"classify"}).code == 2);
    CHECK(run({"experiment"}).code == 2);
}

TEST_CASE("projector then classify") {
    const fs::path pi = scratch("pi6.json");
    const Result p = run({"projector", "--dim", "3", "--out", pi.string()});
    REQUIRE(p.code == 0);
    CHECK(json::parse(p.out)["rank"] == 3);
    const Result c = run({"classify", "--matrix", pi.string(), "--starts", "16", "--seed", "3"});
    REQUIRE(c.code == 0);
    const json doc = json::parse(c.out);
    CHECK(doc["seed"] == 3);
    CHECK(doc["g_upper"].get<double>() == doctest::Approx(6.0));
    CHECK(doc["g_lower"].get<double>() > 5.8);
    CHECK(json::parse(doc.dump()).dump() == doc.dump());
}

TEST_CASE("matrix subcommands") {
    const fs::path m = scratch("m.json");
    write(m, R"({"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1], [0, -1], [-1, 0]]})");
    const Result n = run({"norms", "--matrix", m.string()});
    CHECK(n.code == 0);
    CHECK(json::parse(n.out)["n_factor"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    const Result g = run({"gbound", "--matrix", m.string()});
    CHECK(g.code == 0);
    CHECK(json::parse(g.out)["l1_norm"].get<double>() == doctest::Approx(4.0));
    const Result ph = run({"phases", "--matrix", m.string()});
    CHECK(ph.code == 0);
    CHECK(json::parse(ph.out)["solvable"] == false);
}

TEST_CASE("input errors exit with 2 and distinct messages") {
    const fs::path bad_json = scratch("bad.json");
    const fs::path bad_dims = scratch("dims.json");
    const fs::path bad_nan = scratch("nan.json");
    write(bad_json, "{ not json");
    write(bad_dims, R"({"rows": 2, "cols": 2, "entries": [[1, 0]]})");
    write(bad_nan, R"({"rows": 1, "cols": 1, "entries": [[NaN, 0]]})");
    const Result missing = run({"norms", "--matrix", scratch("nope.json").string()});
    const Result malformed = run({"norms", "--matrix", bad_json.string()});
    const Result dims = run({"norms", "--matrix", bad_dims.string()});
    const Result nan = run({"norms", "--matrix", bad_nan.string()});
    for (const auto* r : {&missing, &malformed, &dims, &nan}) CHECK(r->code == 2);
    CHECK(missing.err.find("missing file") != std::string::npos);
    CHECK(malformed.err.find("malformed JSON") != std::string::npos);
    CHECK(dims.err.find("dimension mismatch") != std::string::npos);
    CHECK(nan.err.find("non-finite") != std::string::npos);
    CHECK(run({"experiment", "h6", "--lambda", "0.3"}).code == 2);
    CHECK(run({"states", "--dim", "1"}).code == 2);
}

TEST_CASE("config file") {
    const fs::path cfg = scratch("cfg.json");
    write(cfg, R"({"seed": 11, "starts": 4, "tolerances": {"phase_tolerance": 1e-9}})");
    const Result r = run({"--config", cfg.string(), "experiment", "g6"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["seed"] == 11);
    CHECK(json::parse(r.out)["starts"] == 4);
    const Result over = run({"--config", cfg.string(), "experiment", "g6", "--seed", "12"});
    CHECK(json::parse(over.out)["seed"] == 12);

    const fs::path bad = scratch("cfg_bad.json");
    write(bad, R"({"tolerances": {"phase_tolerance": -1}})");
    CHECK(run({"--config", bad.string(), "experiment", "g6"}).code == 2);
    write(bad, R"({"starts": 0})");
    CHECK(run({"--config", bad.string(), "experiment", "g6"}).code == 2);
}

TEST_CASE("experiments") {
    const Result h6 = run({"experiment", "h6", "--lambda", "0.2"});
    REQUIRE(h6.code == 0);
    const json doc = json::parse(h6.out);
    CHECK(doc["q_value"].get<double>() == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(doc["parameters"]["seed"] == 0);

    const Result states = run({"states", "--dim", "4", "--check", "all"});
    REQUIRE(states.code == 0);
    CHECK(json::parse(states.out)["isotropy"]["isotropic"] == true);
    CHECK(json::parse(states.out)["permutation"]["invariant"] == true);

    const Result bounded = run({"experiment", "bounded", "--dim", "3", "--samples", "20", "--seed", "1"});
    CHECK(bounded.code == 0);

    const fs::path out1 = scratch("r1.jsonl");
    const fs::path out2 = scratch("r2.jsonl");
    fs::remove(out1);
    fs::remove(out2);
    const std::vector<std::string> base{"experiment", "rarity", "--ensemble", "random_normal", "--samples", "10",
                                        "--seed", "7", "--starts", "4", "--out"};
    auto a1 = base, a2 = base;
    a1.push_back(out1.string());
    a2.push_back(out2.string());
    REQUIRE(run(a1).code == 0);
    REQUIRE(run(a2).code == 0);
    std::stringstream s1, s2;
    s1 << std::ifstream(out1).rdbuf();
    s2 << std::ifstream(out2).rdbuf();
    const std::string p1 = s1.str();
    CHECK(p1 == s2.str());
    CHECK(std::count(p1.begin(), p1.end(), '\n') == 10);
    CHECK(run({"experiment", "rarity", "--ensemble", "nope"}).code == 2);
}

TEST_CASE("black-box exit codes of the binary") {
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("bogus") == 2);
    CHECK(run_binary("norms --matrix /nonexistent.json") == 2);
    CHECK(run_binary("experiment h6 --lambda 0.2") == 0);

    // A one-step power-iteration budget can never meet the convergence test.
    const fs::path m = scratch("m3.json");
    write(m, R"({"rows": 2, "cols": 2, "entries": [[2, 0], [1, 0], [0, 1], [1, 0]]})");
    const fs::path cfg = scratch("cfg_budget.json");
    write(cfg, R"({"tolerances": {"power_max_iterations": 1}})");
    CHECK(run_binary("--config " + cfg.string() + " gbound --matrix " + m.string()) == 3);
    CHECK(run_binary("gbound --matrix " + m.string()) == 0);
}
