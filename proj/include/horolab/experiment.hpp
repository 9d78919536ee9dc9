#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace horolab::experiment {

// schema violation in an experiment config; what() carries the field path
struct ConfigError : std::domain_error {
    using std::domain_error::domain_error;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;   // overrides config "seed"
    std::optional<std::string> out_dir;  // overrides config "out"
    double budget_scale = 1.0;           // multiplies stochastic sample budgets
};

// parse + schema-check; throws ConfigError with field diagnostics
nlohmann::json load_config(const std::string& path);

// FNV-1a over the canonical serialization, as a fixed-width hex string
std::string config_hash(const nlohmann::json& cfg);

// executes the experiment named by cfg["kind"], writing <label>.csv and
// <label>.json under the output directory; returns 0 on success, 2 when a
// declared threshold fails.  Errors (schema, resources) throw.
int run(nlohmann::json cfg, const RunOptions& opts = {});
int run_file(const std::string& config_path, const RunOptions& opts = {});

}  // namespace horolab::experiment
