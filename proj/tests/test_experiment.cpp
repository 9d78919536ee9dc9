#include "horolab/experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "horolab/parallel.hpp"

using namespace horolab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    const fs::path p = fs::temp_directory_path() / "horolab_experiment_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json paraboloid_certify_config(int per_axis) {
    return json{{"kind", "certify-curvature"},
                {"label", "cert"},
                {"submanifold",
                 {{"m", 2},
                  {"n", 1},
                  {"graph", {{{{"exp", {2, 0}}, {"coeff", 1.0}}, {{"exp", {0, 2}}, {"coeff", 1.0}}}}}}},
                {"t_grid_per_axis", per_axis},
                {"thresholds", {{"min_e_star", 1.9}}}};
}

json sublevel_config() {
    return json{{"kind", "sublevel"},
                {"label", "sub"},
                {"seed", 5},
                {"u", {{"m", 1}, {"terms", {{{"exp", {2}}, {"coeff", 1.0}}}}}},
                {"delta_grid", {0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625}},
                {"budgets", {{"samples", 200000}}},
                {"thresholds", {{"exponent_range", {0.4, 0.6}}}}};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HOROLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config loading reports schema problems with field paths") {
    const fs::path dir = scratch();
    CHECK_THROWS_AS(experiment::load_config((dir / "missing.json").string()),
                    experiment::ConfigError);

    std::ofstream(dir / "bad.json") << "{not json";
    CHECK_THROWS_AS(experiment::load_config((dir / "bad.json").string()),
                    experiment::ConfigError);

    std::ofstream(dir / "nokind.json") << "{}";
    CHECK_THROWS_AS(experiment::load_config((dir / "nokind.json").string()),
                    experiment::ConfigError);

    std::ofstream(dir / "unknown.json") << R"({"kind": "frobnicate"})";
    CHECK_THROWS_AS(experiment::load_config((dir / "unknown.json").string()),
                    experiment::ConfigError);

    try {
        json cfg = paraboloid_certify_config(3);
        cfg["submanifold"].erase("graph");
        experiment::run(cfg, {std::nullopt, (dir / "out").string()});
        FAIL("expected ConfigError");
    } catch (const experiment::ConfigError& e) {
        CHECK(std::string(e.what()).find("submanifold.graph") != std::string::npos);
    }
}

TEST_CASE("d must equal m + n") {
    const fs::path dir = scratch();
    json cfg = paraboloid_certify_config(3);
    cfg["submanifold"]["d"] = 4;
    CHECK_THROWS_AS(experiment::run(cfg, {std::nullopt, (dir / "out").string()}),
                    experiment::ConfigError);
}

TEST_CASE("paraboloid certificate: constant curvature 2 at every grid point, exit 0") {
    const fs::path dir = scratch();
    json cfg = paraboloid_certify_config(6);
    const int rc = experiment::run(cfg, {std::nullopt, (dir / "out").string()});
    CHECK(rc == 0);

    std::ifstream csv(dir / "out" / "cert.csv");
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "t1,t2,e_star,coeff_system_min,primitive_dim,is_delta_curved");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        // t1,t2,e_star,...
        std::size_t p = line.find(',');
        p = line.find(',', p + 1);
        CHECK(line.substr(p + 1, 2) == "2,");
        CHECK(line.back() == '1');  // is_delta_curved
    }
    CHECK(rows == 36);

    const json summary = json::parse(slurp(dir / "out" / "cert.json"));
    CHECK(summary["pass"] == true);
    CHECK(summary["results"]["min_e_star"] == doctest::Approx(2.0));
    CHECK(summary["results"]["non_curved_fraction"] == 0.0);
    CHECK(summary["config"]["seed"] == 0);  // defaults are resolved into the summary
    CHECK(summary["config_hash"] == experiment::config_hash(summary["config"]));
}

TEST_CASE("a failed threshold exits 2 but still writes artifacts") {
    const fs::path dir = scratch();
    json cfg = paraboloid_certify_config(3);
    cfg["thresholds"]["min_e_star"] = 3.0;
    const int rc = experiment::run(cfg, {std::nullopt, (dir / "out").string()});
    CHECK(rc == 2);
    const json summary = json::parse(slurp(dir / "out" / "cert.json"));
    CHECK(summary["pass"] == false);
    CHECK(fs::exists(dir / "out" / "cert.csv"));
}

TEST_CASE("same seed gives byte-identical CSV regardless of worker count") {
    const fs::path dir = scratch();
    const json cfg = sublevel_config();
    par::set_worker_count(1);
    CHECK(experiment::run(cfg, {std::nullopt, (dir / "a").string()}) == 0);
    par::set_worker_count(4);
    CHECK(experiment::run(cfg, {std::nullopt, (dir / "b").string()}) == 0);
    par::set_worker_count(1);
    CHECK(slurp(dir / "a" / "sub.csv") == slurp(dir / "b" / "sub.csv"));

    // a different seed changes the data
    json other = cfg;
    other["seed"] = 6;
    CHECK(experiment::run(other, {std::nullopt, (dir / "c").string()}) == 0);
    CHECK(slurp(dir / "a" / "sub.csv") != slurp(dir / "c" / "sub.csv"));
}

TEST_CASE("seed override and budget scale are resolved into the summary") {
    const fs::path dir = scratch();
    experiment::RunOptions opts;
    opts.seed = 9;
    opts.out_dir = (dir / "out").string();
    opts.budget_scale = 0.5;
    CHECK(experiment::run(sublevel_config(), opts) == 0);
    const json summary = json::parse(slurp(dir / "out" / "sub.json"));
    CHECK(summary["config"]["seed"] == 9);
    CHECK(summary["config"]["budget_scale"] == 0.5);
    CHECK(summary["results"]["samples"] == 100000);
}

TEST_CASE("config hash tracks content") {
    const json a = sublevel_config();
    json b = a;
    CHECK(experiment::config_hash(a) == experiment::config_hash(b));
    b["seed"] = 123;
    CHECK(experiment::config_hash(a) != experiment::config_hash(b));
}

TEST_CASE("bundled example configs load and name their subcommand") {
    const fs::path cfgs(HOROLAB_CONFIG_DIR);
    int found = 0;
    for (const auto& entry : fs::directory_iterator(cfgs)) {
        if (entry.path().extension() != ".json") continue;
        ++found;
        const json cfg = experiment::load_config(entry.path().string());
        CHECK(cfg.contains("kind"));
    }
    CHECK(found == 7);
}

TEST_CASE("command-line interface exit codes") {
    const fs::path dir = scratch();
    std::ofstream(dir / "cert.json") << paraboloid_certify_config(3).dump();
    CHECK(run_cli("certify-curvature --config " + (dir / "cert.json").string() + " --out " +
                  (dir / "out").string()) == 0);
    // subcommand must match the config kind
    CHECK(run_cli("sublevel --config " + (dir / "cert.json").string()) == 1);
    // schema violation: d != m + n
    json bad = paraboloid_certify_config(3);
    bad["submanifold"]["d"] = 7;
    std::ofstream(dir / "bad.json") << bad.dump();
    CHECK(run_cli("certify-curvature --config " + (dir / "bad.json").string()) == 1);
    // threshold failure
    json strict = paraboloid_certify_config(3);
    strict["thresholds"]["min_e_star"] = 3.0;
    std::ofstream(dir / "strict.json") << strict.dump();
    CHECK(run_cli("certify-curvature --config " + (dir / "strict.json").string() + " --out " +
                  (dir / "out2").string()) == 2);
    CHECK(run_cli("certify-curvature --config " + (dir / "nope.json").string()) == 1);
}
