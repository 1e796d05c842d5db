#include "bsca/routing.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsca {

RoutingOutcome route(const Request& req, const Matrix& y, const Topology& top,
                     const UtilityModel::View& w) {
    if (req.file < 0 || req.file >= top.library_size || req.location < 0 ||
        req.location >= top.num_locations) {
        throw std::invalid_argument("request indices outside the topology");
    }
    if (y.rows() != top.library_size || y.cols() != top.num_caches) {
        throw std::invalid_argument("caching matrix shape does not match the topology");
    }

    RoutingOutcome out;
    out.shares.reserve(std::min(top.num_caches, 8));
    for (int j = 0; j < top.num_caches; ++j) {
        if (!top.reaches(req.location, j)) continue;
        RoutingOutcome::CacheShare share;
        share.cache = j;
        share.weight = w.weight(req.file, req.location, j);
        share.cached = y(req.file, j);
        out.shares.push_back(share);
    }

    // Greedy order: decreasing weight, ties toward the lower cache id.
    std::vector<int> order(out.shares.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (out.shares[a].weight != out.shares[b].weight) {
            return out.shares[a].weight > out.shares[b].weight;
        }
        return out.shares[a].cache < out.shares[b].cache;
    });

    double remaining = 1.0;
    bool demand_limited = false;
    std::vector<char> tight(out.shares.size(), 0);
    for (int k : order) {
        auto& share = out.shares[k];
        if (share.cached < remaining) {
            // content-limited; the constraint z <= y is tight (covers y = 0)
            share.fraction = share.cached;
            tight[k] = 1;
        } else {
            share.fraction = remaining;
            if (share.fraction == share.cached) tight[k] = 1;
            if (!demand_limited) {
                demand_limited = true;
                out.alpha = share.weight;
            }
        }
        remaining -= share.fraction;
        out.utility += share.weight * share.fraction;
    }
    if (!demand_limited) out.alpha = 0.0;
    out.mbs_fraction = std::max(remaining, 0.0);

    for (std::size_t k = 0; k < out.shares.size(); ++k) {
        auto& share = out.shares[k];
        share.beta = tight[k] ? std::max(share.weight - out.alpha, 0.0) : 0.0;
    }
    return out;
}

double evaluate_utility(const Request& req, const Matrix& y, const Topology& top,
                        const UtilityModel::View& w) {
    return route(req, y, top, w).utility;
}

}  // namespace bsca
