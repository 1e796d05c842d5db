#pragma once

// Independent reference implementations used to validate the library. They
// favor exhaustive enumeration over cleverness and deliberately share no
// code with the implementations they check.

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bsca/graph_reduction.hpp"
#include "bsca/routing.hpp"
#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"

namespace bsca::testing {

// --- capped-simplex projection -------------------------------------------

/// Sort-based reference projection: sorts q, scans every ordered partition
/// boundary pair, solves the multiplier from the capacity identity and
/// accepts the partition satisfying all stationarity and sign conditions.
std::vector<double> oracle_project_sorted(std::span<const double> q, int capacity);

/// Enumerates all 3^N assignments of indices to full/partial/evicted and
/// returns the unique assignment passing every optimality condition.
/// Requires N <= 12.
std::vector<double> oracle_project_signs(std::span<const double> q, int capacity);

// --- routing LP ------------------------------------------------------------

/// Exhaustive enumeration of the basic feasible solutions of
///   max sum w^j z^j, sum z <= 1, 0 <= z^j <= cap^j.
/// Returns the optimal objective value.
double oracle_route_value(std::span<const double> weights, std::span<const double> caps);

/// Largest violation across primal feasibility, dual feasibility,
/// complementary slackness and strong duality for a routing outcome.
double routing_kkt_violation(const RoutingOutcome& outcome);

// --- graphs ----------------------------------------------------------------

/// Min-cost simple path by exhaustive path enumeration (<= 12 nodes);
/// infinity when the target is unreachable.
double oracle_min_path_cost(const GeneralGraph& graph, int source, int target);

// --- cache replay ----------------------------------------------------------

/// Timestamp-scan LRU replay; returns the hit flags per request.
std::vector<bool> oracle_lru_replay(std::span<const file_id> requests, int capacity,
                                    std::vector<file_id>* final_contents = nullptr);

/// History-recount LFU replay (full-history counts, ties evict lower id).
std::vector<bool> oracle_lfu_replay(std::span<const file_id> requests, int capacity,
                                    std::vector<file_id>* final_contents = nullptr);

// --- lower bound pairing ----------------------------------------------------

/// max over all permutations of sum_{k<C} sqrt(w[p(2k)] + w[p(2k+1)]),
/// scaled exactly like the closed-form bound. Requires N <= 8.
double oracle_lower_bound_weighted(std::span<const double> weights, int capacity,
                                   double horizon);

// --- offline benchmark ------------------------------------------------------

/// Exact maximum of the total utility over all caching matrices with entries
/// on a quarter grid, by dynamic programming over per-cache capacity use.
/// Requires J <= 2 and a static utility model.
double oracle_grid_hindsight(std::span<const Request> requests, const Topology& top,
                             const UtilityModel& model);

// --- random instances --------------------------------------------------------

struct RandomTopologyOptions {
    int max_locations = 4;
    int max_caches = 5;
    int min_library = 2;
    int max_library = 30;
    int max_degree = 4;
};

Topology random_topology(std::mt19937_64& rng, const RandomTopologyOptions& options = {});

/// Feasible caching matrix with entries on a quarter grid (columns trimmed
/// to capacity without using the projection under test).
Matrix random_grid_caching(const Topology& top, std::mt19937_64& rng);

/// Feasible caching matrix with continuous entries (columns rescaled).
Matrix random_caching(const Topology& top, std::mt19937_64& rng);

/// Random utility model with weights in [0, max_weight].
UtilityModel random_utility(const Topology& top, std::mt19937_64& rng,
                            double max_weight = 100.0);

/// Projection test vector: entries in [-0.2, 1.0] plus at most one spike in
/// (1.0, 1.4].
std::vector<double> random_projection_input(int n, std::mt19937_64& rng);

}  // namespace bsca::testing
