#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsca/projection.hpp"
#include "bsca/routing.hpp"
#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"

namespace bsca {

enum class StepMode {
    fixed,        // eta = diameter / (K sqrt(T)); needs the horizon up front
    diminishing,  // eta_t = 1 / sqrt(t)
    doubling,     // fixed formula re-evaluated on horizons 2^ceil(log2 t)
};

struct StepSchedule {
    StepMode mode = StepMode::fixed;
};

/// Step size for slot t. `diameter` is the feasible-set diameter and
/// `grad_bound` the supergradient norm bound; both must be positive.
/// Fixed mode without a horizon throws std::invalid_argument and points the
/// caller at the diminishing or doubling modes.
double step_size(const StepSchedule& schedule, slot_t t, std::optional<slot_t> horizon,
                 double diameter, double grad_bound);

struct AlgorithmConstants {
    double diameter = 0.0;    // Delta_Y, per-cache piecewise: sqrt(sum_j 2 min(C_j, N - C_j))
    double grad_bound = 0.0;  // K = w^(1) sqrt(deg)
    int degree = 0;
};

AlgorithmConstants compute_constants(const Topology& top, const UtilityModel& w);

/// Ascent direction for one slot. Support is confined to the requested
/// (file, location) pair; `entries` lists (cache, value) over the reachable
/// caches, plus eviction-pressure entries in reconfiguration mode.
struct Supergradient {
    file_id file = 0;
    location_id location = 0;
    std::vector<std::pair<cache_id, double>> entries;

    double norm() const;
    bool zero(double tol = 0.0) const;
};

/// g = beta duals of the routing LP at the current configuration.
Supergradient supergradient(const RoutingOutcome& outcome, const Request& req);

/// Single-cache shortcut: the utility is linear there, so the gradient is
/// just the request weight at the requested file.
Supergradient single_cache_gradient(const Request& req, const Topology& top,
                                    const UtilityModel::View& w);

/// Ascent direction for the prefetch-cost objective
/// J_t(y) = f_t(y) - sum c^{n,j} max(y^{n,j} - y_prev^{n,j}, 0):
/// q = g + h with h^{n,j} = -c^{n,j} where the requested file's allocation
/// increased since y_prev. Costs must be nonnegative, N x J.
Supergradient reconfig_supergradient(const Supergradient& g, const Matrix& y,
                                     const Matrix& y_prev, const Matrix& costs);

struct BscaOptions {
    StepSchedule schedule{StepMode::fixed};
    std::optional<slot_t> horizon;
    InitialFill initial_fill = InitialFill::uniform;
    /// Dense w^n r^n gradient instead of LP duals; enabled automatically for
    /// single-cache topologies unless set explicitly.
    std::optional<bool> single_cache_gradient;
    /// Per-(file, cache) prefetch costs; enables the reconfiguration-cost
    /// objective.
    std::optional<Matrix> reconfig_costs;
};

/// Online supergradient ascent over cache configurations: per slot, route
/// the request, accrue utility against the pre-update configuration, then
/// take a projected ascent step along the supergradient.
class BscaPolicy {
public:
    BscaPolicy(Topology top, BscaOptions options, const UtilityModel& w);

    struct StepResult {
        RoutingOutcome outcome;
        double utility = 0.0;        // accrued against the pre-update state
        double served_fraction = 0.0;
        double step = 0.0;           // eta_t actually applied (0 when g = 0)
    };

    StepResult step(const Request& req, const UtilityModel& w);

    /// Warm start from an arbitrary feasible configuration.
    void reset_caching(Matrix y);

    const Matrix& caching() const { return y_; }
    slot_t slot() const { return t_; }
    const AlgorithmConstants& constants() const { return constants_; }

    int max_projection_passes() const { return max_passes_; }
    /// Slots where some cache needed more than three partition passes.
    long slow_projection_events() const { return slow_events_; }

private:
    Topology top_;
    BscaOptions options_;
    AlgorithmConstants constants_;
    Matrix y_;
    Matrix prev_y_;  // kept only in reconfiguration mode
    slot_t t_ = 1;
    bool use_dense_gradient_ = false;
    int max_passes_ = 0;
    long slow_events_ = 0;
};

}  // namespace bsca
