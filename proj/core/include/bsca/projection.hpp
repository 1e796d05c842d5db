#pragma once

#include <span>
#include <vector>

#include "bsca/topology.hpp"
#include "bsca/types.hpp"

namespace bsca {

struct ProjectionStats {
    int passes = 0;  // multiplier recomputations across both box attempts
};

/// Euclidean projection of q onto the capped simplex
/// { y in [0,1]^N : sum_n y^n <= C }, in place.
///
/// If clipping q to the box already satisfies the capacity constraint the
/// clipped vector is returned (the constraint is slack at the optimum).
/// Otherwise the capacity binds and the KKT system is solved by partitioning
/// indices into fully cached / partial / evicted sets: the partial set keeps
/// y = q - rho/2, negatives are evicted, and at most one index (the single
/// entry of q allowed above 1) is pinned at 1. The partial-set loop is
/// monotone, so each attempt finishes in at most N passes.
///
/// Precondition: at most one entry of q exceeds 1 (holds for ascent updates
/// of a feasible point along a single-file direction). Throws
/// std::invalid_argument when C < 1 or C >= N.
void project_cache_inplace(std::span<double> q, int capacity, ProjectionStats* stats = nullptr);

/// Copying convenience wrapper around project_cache_inplace.
std::vector<double> project_cache(std::vector<double> q, int capacity,
                                  ProjectionStats* stats = nullptr);

/// Column-wise projection onto the product of per-cache capped simplices.
/// Throws std::invalid_argument on dimension mismatch with the topology.
Matrix project_all(Matrix q, const Topology& top, ProjectionStats* stats = nullptr);

}  // namespace bsca
