#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chebvar/experiment.hpp"
#include "chebvar/galois.hpp"

namespace chebvar {

struct RunConfig {
    std::vector<std::uint64_t> x;
    QRule q_rule;
    double M = 3.0;
    unsigned workers = 1;
    std::uint64_t memory_budget_mb = 2048;
    std::uint64_t pair_budget = 400'000'000;
    std::uint64_t seed = 0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool manifest = true;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// Contents of a configuration file:
///
///   [context]   name, polynomial (ascending coefficients), group_order,
///               class (cycle types such as "1+2", comma separated),
///               class_density ("n/d"), abelian_conductor,
///               log_disc_L (optional), admissible_overrides ("3:false, 9:true")
///   [run]       x (comma separated), Q ("full", "x/(log x)^k" or an integer),
///               M, workers, memory_budget_mb, pair_budget, seed
///   [output]    directory, manifest
///
/// Lines starting with '#' or ';' are comments.
struct ExperimentConfig {
    ContextSpec context;
    RunConfig run;
    OutputConfig output;

    ExperimentOptions experiment_options() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the whole text or throws ConfigError naming the source, line and
/// field. The context block is also run through build_context.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

}  // namespace chebvar
