#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "horolab/errors.hpp"
#include "horolab/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for equidistribution of translated submanifold measures"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    double budget_scale = 1.0;

    const char* kinds[] = {"certify-curvature", "sublevel",       "diagonalize-demo",
                           "fourier-decay",     "equidistribute", "mixing",
                           "horocycle"};
    for (const char* kind : kinds) {
        CLI::App* sub = app.add_subcommand(kind, std::string("run a ") + kind + " experiment");
        sub->add_option("--config", config_path, "experiment config file (JSON)")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "override the output directory");
        sub->add_option("--budget-scale", budget_scale, "scale stochastic sample budgets");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        nlohmann::json cfg = horolab::experiment::load_config(config_path);
        if (cfg["kind"].get<std::string>() != kind)
            throw horolab::experiment::ConfigError("config.kind: '" +
                                                   cfg["kind"].get<std::string>() +
                                                   "' does not match subcommand '" + kind + "'");
        horolab::experiment::RunOptions opts;
        opts.seed = seed;
        opts.out_dir = out_dir;
        opts.budget_scale = budget_scale;
        return horolab::experiment::run(std::move(cfg), opts);
    } catch (const horolab::experiment::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const horolab::ResourceError& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
