#pragma once

#include <vector>

#include "bsca/topology.hpp"
#include "bsca/types.hpp"

namespace bsca {

/// Arbitrary caching network without link capacities. Users, caches and the
/// MBS are nodes; path costs are nonnegative. Used only as input to the
/// bipartite reduction.
struct GeneralGraph {
    struct Edge {
        int u = 0;
        int v = 0;
        double cost = 0.0;  // >= 0, undirected
    };

    int num_nodes = 0;
    std::vector<Edge> edges;
    std::vector<int> user_nodes;        // node of location i
    std::vector<int> cache_nodes;       // node of cache j
    std::vector<int> cache_capacities;  // C_j for the reduced topology
    int mbs_node = -1;
    int library_size = 0;
};

struct GraphReduction {
    Topology topology;
    /// Min-cost path value per (location, cache); +inf when unreachable.
    Matrix path_cost;
    /// Default cost-to-utility transform: max finite cost minus path cost,
    /// zero for unreachable pairs. Callers may substitute their own.
    Matrix route_benefit_hint;
};

/// Collapses the graph onto a bipartite topology by shortest path costs.
/// Throws std::invalid_argument on negative costs or malformed node ids and
/// std::runtime_error("unserviceable location ...") when some user cannot
/// reach the MBS node.
GraphReduction reduce_general_graph(const GeneralGraph& graph);

}  // namespace bsca
