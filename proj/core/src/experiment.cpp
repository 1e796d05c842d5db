#include "bsca/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "bsca/bounds.hpp"
#include "bsca/routing.hpp"

namespace bsca {

namespace {

const std::vector<std::string> kKnownPolicies = {"bsca", "lru",  "lfu",
                                                 "mlru", "qlru-lazy", "hindsight"};

struct SlotOutcome {
    double utility = 0.0;
    double hit = 0.0;
};

class PolicyRunner {
public:
    virtual ~PolicyRunner() = default;
    virtual SlotOutcome step(const Request& req) = 0;
};

class BscaRunner : public PolicyRunner {
public:
    BscaRunner(const ExperimentConfig& config, StepMode schedule)
        : model_(&config.utility) {
        BscaOptions options;
        options.schedule = StepSchedule{schedule};
        options.horizon = config.workload.horizon;
        if (config.reconfig_cost) {
            options.reconfig_costs = Matrix(config.topology.library_size,
                                            config.topology.num_caches, *config.reconfig_cost);
        }
        policy_.emplace(config.topology, std::move(options), config.utility);
    }

    SlotOutcome step(const Request& req) override {
        const auto result = policy_->step(req, *model_);
        return {result.utility, result.served_fraction};
    }

private:
    const UtilityModel* model_;
    std::optional<BscaPolicy> policy_;
};

class SingleCacheRunner : public PolicyRunner {
public:
    SingleCacheRunner(const ExperimentConfig& config, bool lfu)
        : top_(&config.topology), model_(&config.utility), lfu_(lfu) {
        if (lfu) {
            lfu_cache_.emplace(config.topology.capacities[0]);
        } else {
            lru_cache_.emplace(config.topology.capacities[0]);
        }
    }

    SlotOutcome step(const Request& req) override {
        if (!top_->reaches(req.location, 0)) return {0.0, 0.0};
        const bool hit = lfu_ ? lfu_cache_->step(req.file) : lru_cache_->step(req.file);
        if (!hit) return {0.0, 0.0};
        return {model_->at(req.slot).weight(req.file, req.location, 0), 1.0};
    }

private:
    const Topology* top_;
    const UtilityModel* model_;
    bool lfu_;
    std::optional<LruCache> lru_cache_;
    std::optional<LfuCache> lfu_cache_;
};

class MlruRunner : public PolicyRunner {
public:
    MlruRunner(const ExperimentConfig& config, std::uint64_t seed, bool lazy, double q)
        : model_(&config.utility), lazy_(lazy) {
        if (lazy) {
            qlru_.emplace(config.topology, seed, q);
        } else {
            mlru_.emplace(config.topology, seed);
        }
    }

    SlotOutcome step(const Request& req) override {
        const auto view = model_->at(req.slot);
        const auto result = lazy_ ? qlru_->step(req, view) : mlru_->step(req, view);
        return {result.utility, result.hit ? 1.0 : 0.0};
    }

private:
    const UtilityModel* model_;
    bool lazy_;
    std::optional<MlruPolicy> mlru_;
    std::optional<QlruLazyPolicy> qlru_;
};

class ReplayRunner : public PolicyRunner {
public:
    ReplayRunner(const ExperimentConfig& config, Matrix y)
        : top_(&config.topology), model_(&config.utility), y_(std::move(y)) {}

    SlotOutcome step(const Request& req) override {
        const auto outcome = route(req, y_, *top_, model_->at(req.slot));
        return {outcome.utility, outcome.served_fraction()};
    }

private:
    const Topology* top_;
    const UtilityModel* model_;
    Matrix y_;
};

bool uniform_weights(const UtilityModel& model, double& weight_out) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int s = 0; s < model.stage_count(); ++s) {
        const auto view = model.stage_view(s);
        for (int n = 0; n < model.library_size(); ++n) {
            for (int i = 0; i < model.num_locations(); ++i) {
                for (int j = 0; j < model.num_caches(); ++j) {
                    const double w = view.weight(n, i, j);
                    lo = std::min(lo, w);
                    hi = std::max(hi, w);
                }
            }
        }
    }
    weight_out = hi;
    return hi > 0.0 && (hi - lo) <= 1e-12 * hi;
}

HindsightSolution solve_hindsight(std::span<const Request> requests,
                                  const ExperimentConfig& config) {
    // the exact solver assumes every request can reach the cache
    if (config.topology.num_caches == 1 && config.topology.num_locations == 1 &&
        config.topology.degree() == 1) {
        return hindsight_single_cache(requests, config.utility, config.topology.capacities[0]);
    }
    return hindsight_network(requests, config.topology, config.utility,
                             config.hindsight_options);
}

}  // namespace

void validate_experiment(const ExperimentConfig& config) {
    auto report = validate_topology(config.topology);
    if (!report.ok()) throw ConfigError("topology: " + report.violations.front());

    if (config.utility.library_size() != config.topology.library_size ||
        config.utility.num_locations() != config.topology.num_locations ||
        config.utility.num_caches() != config.topology.num_caches) {
        throw ConfigError("utility model dimensions do not match the topology");
    }

    if (config.policies.empty()) throw ConfigError("no policies configured");
    for (std::size_t a = 0; a < config.policies.size(); ++a) {
        const auto& policy = config.policies[a];
        if (std::find(kKnownPolicies.begin(), kKnownPolicies.end(), policy.name) ==
            kKnownPolicies.end()) {
            throw ConfigError("unknown policy '" + policy.name + "'");
        }
        for (std::size_t b = a + 1; b < config.policies.size(); ++b) {
            if (config.policies[b].name == policy.name) {
                throw ConfigError("duplicate policy '" + policy.name + "'");
            }
        }
        if ((policy.name == "lru" || policy.name == "lfu") &&
            config.topology.num_caches != 1) {
            throw ConfigError(policy.name + " is a single-cache policy; topology has " +
                              std::to_string(config.topology.num_caches) + " caches");
        }
        if (policy.qlru_q < 0.0 || policy.qlru_q > 1.0) {
            throw ConfigError("qlru-lazy q must lie in [0, 1]");
        }
    }

    if (config.reconfig_cost && *config.reconfig_cost < 0.0) {
        throw ConfigError("reconfiguration cost must be nonnegative");
    }

    const auto& workload = config.workload;
    if (workload.kind != WorkloadKind::trace) {
        if (workload.library_size != config.topology.library_size) {
            throw ConfigError("workload library size does not match the topology");
        }
        if (workload.num_locations != config.topology.num_locations) {
            throw ConfigError("workload location count does not match the topology");
        }
        if (workload.location_rule == LocationRule::fixed &&
            (workload.fixed_location < 0 ||
             workload.fixed_location >= config.topology.num_locations)) {
            throw ConfigError("fixed workload location outside the topology");
        }
    }
    if (workload.kind == WorkloadKind::lb_adversary && workload.adversary_weights.empty() &&
        (config.topology.num_caches != 1 || config.topology.num_locations != 1)) {
        throw ConfigError(
            "lb-adversary needs explicit weights outside single-cache topologies");
    }
}

MetricsSeries run_experiment(const ExperimentConfig& original) {
    validate_experiment(original);
    ExperimentConfig config = original;

    auto& workload = config.workload;
    if (workload.seed == 0) workload.seed = derive_seed(config.seed, 0);
    if (workload.kind == WorkloadKind::lb_adversary && workload.adversary_weights.empty()) {
        // single cache: the adversary distribution comes from the file weights
        workload.adversary_weights.resize(config.topology.library_size);
        const auto view = config.utility.stage_view(0);
        for (int n = 0; n < config.topology.library_size; ++n) {
            workload.adversary_weights[n] = view.weight(n, 0, 0);
        }
    }

    std::vector<Request> requests;
    if (workload.kind == WorkloadKind::trace) {
        auto data = parse_trace(workload.trace_path, workload.trace_columns);
        if (data.library_size > config.topology.library_size) {
            throw ConfigError("trace references more files than the topology library");
        }
        if (data.num_locations > config.topology.num_locations) {
            throw ConfigError("trace references more locations than the topology");
        }
        requests = std::move(data.requests);
        workload.horizon = static_cast<slot_t>(requests.size());
    } else {
        requests = generate_requests(workload);
    }
    const slot_t horizon = static_cast<slot_t>(requests.size());

    const bool want_hindsight =
        config.regret_mode != RegretMode::none ||
        std::any_of(config.policies.begin(), config.policies.end(),
                    [](const PolicyInstanceSpec& p) { return p.name == "hindsight"; });

    HindsightSolution hindsight;
    if (want_hindsight) hindsight = solve_hindsight(requests, config);

    std::vector<std::unique_ptr<PolicyRunner>> runners;
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        const auto& spec = config.policies[p];
        const std::uint64_t seed = derive_seed(config.seed, 1 + p);
        if (spec.name == "bsca") {
            runners.push_back(std::make_unique<BscaRunner>(config, spec.bsca_schedule));
        } else if (spec.name == "lru") {
            runners.push_back(std::make_unique<SingleCacheRunner>(config, false));
        } else if (spec.name == "lfu") {
            runners.push_back(std::make_unique<SingleCacheRunner>(config, true));
        } else if (spec.name == "mlru") {
            runners.push_back(std::make_unique<MlruRunner>(config, seed, false, 1.0));
        } else if (spec.name == "qlru-lazy") {
            runners.push_back(std::make_unique<MlruRunner>(config, seed, true, spec.qlru_q));
        } else {
            runners.push_back(std::make_unique<ReplayRunner>(config, hindsight.y));
        }
    }

    MetricsSeries series;
    series.horizon = horizon;
    series.checkpoints = checkpoint_slots(horizon);
    series.policies.resize(config.policies.size());
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        series.policies[p].name = config.policies[p].name;
        series.policies[p].utility.reserve(horizon);
        series.policies[p].hit.reserve(horizon);
    }

    // replay of the benchmark configuration, used for the at-horizon regret
    const bool track_benchmark =
        want_hindsight && config.regret_mode == RegretMode::hindsight_at_horizon;
    std::vector<double> benchmark_slot_utility;
    if (track_benchmark) benchmark_slot_utility.reserve(horizon);

    for (const Request& req : requests) {
        for (std::size_t p = 0; p < runners.size(); ++p) {
            const auto outcome = runners[p]->step(req);
            series.policies[p].utility.push_back(outcome.utility);
            series.policies[p].hit.push_back(outcome.hit);
        }
        if (track_benchmark) {
            benchmark_slot_utility.push_back(
                route(req, hindsight.y, config.topology, config.utility.at(req.slot)).utility);
        }
    }

    if (config.regret_mode != RegretMode::none && horizon > 0) {
        series.hindsight_values.reserve(series.checkpoints.size());
        if (config.regret_mode == RegretMode::hindsight_at_horizon) {
            double cumulative = 0.0;
            std::size_t cursor = 0;
            for (slot_t t = 1; t <= horizon; ++t) {
                cumulative += benchmark_slot_utility[t - 1];
                if (cursor < series.checkpoints.size() && series.checkpoints[cursor] == t) {
                    series.hindsight_values.push_back(cumulative);
                    ++cursor;
                }
            }
        } else {
            for (slot_t t : series.checkpoints) {
                const auto prefix = std::span<const Request>(requests.data(),
                                                             static_cast<std::size_t>(t));
                series.hindsight_values.push_back(solve_hindsight(prefix, config).total_utility);
            }
        }

        std::vector<std::pair<slot_t, double>> checkpoints_with_values;
        checkpoints_with_values.reserve(series.checkpoints.size());
        for (std::size_t k = 0; k < series.checkpoints.size(); ++k) {
            checkpoints_with_values.emplace_back(series.checkpoints[k],
                                                 series.hindsight_values[k]);
        }
        for (auto& track : series.policies) {
            track.regret = regret_series(track.utility, checkpoints_with_values,
                                         config.regret_mode);
        }

        BoundInputs bound;
        bound.num_caches = config.topology.num_caches;
        bound.capacity = config.topology.max_capacity();
        bound.degree = config.topology.degree();
        bound.max_weight = config.utility.max_weight_overall();
        bound.library_size = config.topology.library_size;

        double flat_weight = 0.0;
        const bool lower_applies = config.topology.num_caches == 1 &&
                                   uniform_weights(config.utility, flat_weight) &&
                                   2 * bound.capacity < bound.library_size;
        for (slot_t t : series.checkpoints) {
            bound.horizon = static_cast<double>(t);
            series.bound_upper.push_back(regret_upper_bound(bound));
            series.bound_lower.push_back(
                lower_applies
                    ? regret_lower_bound_uniform(flat_weight, bound.library_size,
                                                 bound.capacity, bound.horizon)
                    : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return series;
}

}  // namespace bsca
