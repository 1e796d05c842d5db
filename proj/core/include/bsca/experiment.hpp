#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsca/baselines.hpp"
#include "bsca/bsca_policy.hpp"
#include "bsca/metrics.hpp"
#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"
#include "bsca/workloads.hpp"

namespace bsca {

struct PolicyInstanceSpec {
    std::string name;  // bsca | lru | lfu | mlru | qlru-lazy | hindsight
    StepMode bsca_schedule = StepMode::fixed;
    double qlru_q = 1.0;
};

struct ExperimentConfig {
    Topology topology;
    UtilityModel utility = UtilityModel::per_file({1.0});
    WorkloadSpec workload;
    std::vector<PolicyInstanceSpec> policies;
    RegretMode regret_mode = RegretMode::hindsight_at_horizon;
    std::uint64_t seed = 1;
    std::string output_path;  // empty -> caller decides (CLI prints to stdout)
    std::optional<double> reconfig_cost;
    HindsightOptions hindsight_options;
};

/// Parse the flat key-value experiment format (see the README for the
/// grammar). ConfigError on syntax or semantic problems, IoError on
/// unreadable referenced files.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Validate cross-field constraints (policy applicability, workload versus
/// topology dimensions, ...). Throws ConfigError.
void validate_experiment(const ExperimentConfig& config);

/// Run every configured policy over one shared request sequence and collect
/// per-slot metrics plus checkpointed benchmark, regret and bound values.
/// Deterministic: identical (config, seed) gives identical series.
MetricsSeries run_experiment(const ExperimentConfig& config);

}  // namespace bsca
