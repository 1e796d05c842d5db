#include "bsca/graph_reduction.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace bsca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> dijkstra(const std::vector<std::vector<std::pair<int, double>>>& adj,
                             int source) {
    std::vector<double> dist(adj.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (auto [v, c] : adj[u]) {
            if (d + c < dist[v]) {
                dist[v] = d + c;
                heap.emplace(dist[v], v);
            }
        }
    }
    return dist;
}

}  // namespace

GraphReduction reduce_general_graph(const GeneralGraph& graph) {
    const int nodes = graph.num_nodes;
    if (nodes < 1) throw std::invalid_argument("graph has no nodes");
    if (graph.mbs_node < 0 || graph.mbs_node >= nodes) {
        throw std::invalid_argument("MBS node id out of range");
    }
    if (graph.cache_capacities.size() != graph.cache_nodes.size()) {
        throw std::invalid_argument("one capacity per cache node required");
    }
    auto check_node = [nodes](int v) {
        if (v < 0 || v >= nodes) throw std::invalid_argument("node id out of range");
    };
    for (int v : graph.user_nodes) check_node(v);
    for (int v : graph.cache_nodes) check_node(v);

    std::vector<std::vector<std::pair<int, double>>> adj(nodes);
    for (const auto& e : graph.edges) {
        check_node(e.u);
        check_node(e.v);
        if (!(e.cost >= 0.0) || !std::isfinite(e.cost)) {
            throw std::invalid_argument("edge costs must be finite and nonnegative");
        }
        adj[e.u].emplace_back(e.v, e.cost);
        adj[e.v].emplace_back(e.u, e.cost);
    }

    const int locations = static_cast<int>(graph.user_nodes.size());
    const int caches = static_cast<int>(graph.cache_nodes.size());
    GraphReduction out;
    out.path_cost = Matrix(locations, caches, kInf);

    Topology top;
    top.num_locations = locations;
    top.num_caches = caches;
    top.library_size = graph.library_size;
    top.capacities = graph.cache_capacities;
    top.reachable.assign(static_cast<std::size_t>(locations) * caches, 0);

    double max_finite = 0.0;
    for (int i = 0; i < locations; ++i) {
        const auto dist = dijkstra(adj, graph.user_nodes[i]);
        if (!std::isfinite(dist[graph.mbs_node])) {
            throw std::runtime_error("unserviceable location " + std::to_string(i + 1) +
                                     ": no path to the MBS node");
        }
        for (int j = 0; j < caches; ++j) {
            const double d = dist[graph.cache_nodes[j]];
            out.path_cost(i, j) = d;
            if (std::isfinite(d)) {
                top.reachable[static_cast<std::size_t>(i) * caches + j] = 1;
                max_finite = std::max(max_finite, d);
            }
        }
    }

    out.route_benefit_hint = Matrix(locations, caches, 0.0);
    for (int i = 0; i < locations; ++i) {
        for (int j = 0; j < caches; ++j) {
            const double d = out.path_cost(i, j);
            if (std::isfinite(d)) out.route_benefit_hint(i, j) = max_finite - d;
        }
    }
    out.topology = std::move(top);
    return out;
}

}  // namespace bsca
