#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsca/types.hpp"

namespace bsca {

enum class RegretMode {
    none,
    hindsight_at_horizon,  // one static benchmark from the full log
    hindsight_up_to_t,     // benchmark recomputed on each checkpoint prefix
};

struct RegretPoint {
    slot_t t = 0;
    double regret = 0.0;  // R_t = H_t - sum_{s<=t} f_s
    double rate = 0.0;    // R_t / t
};

/// Realized regret against the benchmark values H_t supplied per checkpoint.
/// Checkpoints must be sorted, positive and within the utility series,
/// otherwise std::invalid_argument.
std::vector<RegretPoint> regret_series(std::span<const double> slot_utilities,
                                       std::span<const std::pair<slot_t, double>> hindsight,
                                       RegretMode mode);

struct PolicySeries {
    std::string name;
    std::vector<double> utility;  // per slot
    std::vector<double> hit;      // fraction served by caches (0/1 for whole-file policies)
    std::vector<RegretPoint> regret;  // per checkpoint; empty when regret is off
};

struct MetricsSeries {
    slot_t horizon = 0;
    std::vector<slot_t> checkpoints;        // powers of two plus the horizon
    std::vector<PolicySeries> policies;
    std::vector<double> hindsight_values;   // H_t per checkpoint
    std::vector<double> bound_upper;        // per checkpoint
    std::vector<double> bound_lower;        // per checkpoint, NaN when inapplicable
};

/// Geometric checkpoint grid: 1, 2, 4, ... plus the horizon itself.
std::vector<slot_t> checkpoint_slots(slot_t horizon);

/// Stable CSV schema: one row per slot with per-policy utility columns,
/// checkpoint rows flagged and carrying benchmark, regret and bound columns.
std::string to_csv(const MetricsSeries& series);

}  // namespace bsca
