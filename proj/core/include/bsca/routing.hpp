#pragma once

#include <vector>

#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"

namespace bsca {

/// Optimal service plan for one request plus the dual certificate of the
/// underlying fractional-knapsack LP
///
///     max sum_j w^j z^j   s.t.  sum_j z^j <= 1,  0 <= z^j <= y^{n,j},
///
/// over the caches reachable from the request's location. `alpha` is the
/// multiplier of the demand constraint, `beta` the multipliers of the
/// per-cache content constraints. Any remainder is served by the MBS at
/// zero utility.
struct RoutingOutcome {
    struct CacheShare {
        cache_id cache = 0;
        double weight = 0.0;    // w^{n,i,j} for this request
        double cached = 0.0;    // y^{n,j} at routing time
        double fraction = 0.0;  // z^j
        double beta = 0.0;
    };

    double utility = 0.0;
    double mbs_fraction = 0.0;  // z^0
    double alpha = 0.0;
    std::vector<CacheShare> shares;  // one entry per reachable cache, ascending cache id

    double served_fraction() const { return 1.0 - mbs_fraction; }
};

/// Greedy exact solution: fill caches in decreasing-weight order (ties
/// broken toward the lower cache id) until the request is complete. Duals:
/// alpha equals the weight of the first cache whose fill was limited by
/// remaining demand rather than by content, or zero if content ran out
/// first; beta^j = max(w^j - alpha, 0) exactly on caches whose content
/// constraint is tight. At the degenerate vertex where demand and content
/// bind together, the demand-limited rule wins, which pins the minimal-beta
/// dual point.
RoutingOutcome route(const Request& req, const Matrix& y, const Topology& top,
                     const UtilityModel::View& w);

/// f_t(y) for a single request; identical to route(...).utility.
double evaluate_utility(const Request& req, const Matrix& y, const Topology& top,
                        const UtilityModel::View& w);

}  // namespace bsca
