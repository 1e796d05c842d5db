#include "bsca/bsca_policy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace bsca {

double step_size(const StepSchedule& schedule, slot_t t, std::optional<slot_t> horizon,
                 double diameter, double grad_bound) {
    if (t < 1) throw std::invalid_argument("slot index must be positive");
    if (schedule.mode == StepMode::diminishing) {
        return 1.0 / std::sqrt(static_cast<double>(t));
    }
    if (!(diameter > 0.0) || !(grad_bound > 0.0)) {
        throw std::invalid_argument("step size needs positive diameter and gradient bound");
    }
    if (schedule.mode == StepMode::fixed) {
        if (!horizon || *horizon < 1) {
            throw std::invalid_argument(
                "fixed step size needs the horizon T; use the diminishing or doubling "
                "schedule when T is unknown");
        }
        return diameter / (grad_bound * std::sqrt(static_cast<double>(*horizon)));
    }
    // doubling: restart the fixed formula on horizon guesses 2^ceil(log2 t)
    const auto guess = std::bit_ceil(static_cast<std::uint64_t>(t));
    return diameter / (grad_bound * std::sqrt(static_cast<double>(guess)));
}

AlgorithmConstants compute_constants(const Topology& top, const UtilityModel& w) {
    AlgorithmConstants c;
    double sum = 0.0;
    for (int cap : top.capacities) {
        // farthest pair caches entirely different files; beyond half the
        // library the overlap is forced, shrinking the diameter
        sum += 2.0 * std::min(cap, top.library_size - cap);
    }
    c.diameter = std::sqrt(sum);
    c.degree = top.degree();
    c.grad_bound = w.max_weight_overall() * std::sqrt(static_cast<double>(c.degree));
    return c;
}

double Supergradient::norm() const {
    double sq = 0.0;
    for (const auto& [cache, value] : entries) sq += value * value;
    return std::sqrt(sq);
}

bool Supergradient::zero(double tol) const {
    for (const auto& [cache, value] : entries) {
        if (std::abs(value) > tol) return false;
    }
    return true;
}

Supergradient supergradient(const RoutingOutcome& outcome, const Request& req) {
    Supergradient g;
    g.file = req.file;
    g.location = req.location;
    g.entries.reserve(outcome.shares.size());
    for (const auto& share : outcome.shares) {
        g.entries.emplace_back(share.cache, share.beta);
    }
    return g;
}

Supergradient single_cache_gradient(const Request& req, const Topology& top,
                                    const UtilityModel::View& w) {
    if (top.num_caches != 1) {
        throw std::invalid_argument("dense gradient is defined for one cache only");
    }
    Supergradient g;
    g.file = req.file;
    g.location = req.location;
    if (top.reaches(req.location, 0)) {
        g.entries.emplace_back(0, w.weight(req.file, req.location, 0));
    }
    return g;
}

Supergradient reconfig_supergradient(const Supergradient& g, const Matrix& y,
                                     const Matrix& y_prev, const Matrix& costs) {
    if (costs.rows() != y.rows() || costs.cols() != y.cols() || y_prev.rows() != y.rows() ||
        y_prev.cols() != y.cols()) {
        throw std::invalid_argument("cost or state matrices have mismatched shapes");
    }
    for (int j = 0; j < costs.cols(); ++j) {
        for (double c : costs.col(j)) {
            if (c < 0.0) throw std::invalid_argument("prefetch costs must be nonnegative");
        }
    }
    Supergradient q = g;
    for (int j = 0; j < y.cols(); ++j) {
        if (!(y(g.file, j) - y_prev(g.file, j) > 0.0)) continue;
        const double c = costs(g.file, j);
        if (c == 0.0) continue;
        bool merged = false;
        for (auto& [cache, value] : q.entries) {
            if (cache == j) {
                value -= c;
                merged = true;
                break;
            }
        }
        if (!merged) q.entries.emplace_back(j, -c);
    }
    return q;
}

BscaPolicy::BscaPolicy(Topology top, BscaOptions options, const UtilityModel& w)
    : top_(std::move(top)), options_(std::move(options)) {
    auto report = validate_topology(top_);
    if (!report.ok()) {
        throw std::invalid_argument("invalid topology: " + report.violations.front());
    }
    constants_ = compute_constants(top_, w);
    if (options_.reconfig_costs) {
        const double cmax = [&] {
            double m = 0.0;
            for (int j = 0; j < options_.reconfig_costs->cols(); ++j) {
                for (double c : options_.reconfig_costs->col(j)) m = std::max(m, c);
            }
            return m;
        }();
        // conservative: every reachable cache may charge the full cost
        constants_.grad_bound =
            (w.max_weight_overall() + cmax) * std::sqrt(static_cast<double>(constants_.degree));
    }
    use_dense_gradient_ =
        options_.single_cache_gradient.value_or(top_.num_caches == 1);
    if (use_dense_gradient_ && top_.num_caches != 1) {
        throw std::invalid_argument("dense gradient requires a single-cache topology");
    }
    y_ = feasible_initial_cache(top_, options_.initial_fill);
    if (options_.reconfig_costs) prev_y_ = y_;
}

void BscaPolicy::reset_caching(Matrix y) {
    if (!satisfies_cache_constraints(y, top_)) {
        throw std::invalid_argument("warm-start configuration is infeasible");
    }
    y_ = std::move(y);
    if (options_.reconfig_costs) prev_y_ = y_;
}

BscaPolicy::StepResult BscaPolicy::step(const Request& req, const UtilityModel& w) {
    const auto view = w.at(t_);
    StepResult result;
    result.outcome = route(req, y_, top_, view);
    result.utility = result.outcome.utility;
    result.served_fraction = result.outcome.served_fraction();

    Supergradient g = use_dense_gradient_ ? single_cache_gradient(req, top_, view)
                                          : supergradient(result.outcome, req);
    if (options_.reconfig_costs) {
        g = reconfig_supergradient(g, y_, prev_y_, *options_.reconfig_costs);
        prev_y_ = y_;
    }

    if (!g.zero()) {
        const double eta =
            step_size(options_.schedule, t_, options_.horizon, constants_.diameter,
                      constants_.grad_bound);
        result.step = eta;
        for (const auto& [cache, value] : g.entries) {
            if (value == 0.0) continue;
            auto col = y_.col(cache);
            col[req.file] += eta * value;
            ProjectionStats stats;
            project_cache_inplace(col, top_.capacities[cache], &stats);
            max_passes_ = std::max(max_passes_, stats.passes);
            if (stats.passes > 3) ++slow_events_;
        }
    }
    ++t_;
    return result;
}

}  // namespace bsca
