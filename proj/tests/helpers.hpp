#pragma once

// Shared fixture builders for the test suites.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "linkspam/rng.hpp"
#include "linkspam/webgraph.hpp"

namespace testutil {

// Seeded G(n, p) directed graph without self-loops. Node names are single
// labels ("p0", "p1", ...) so every page is its own domain.
inline linkspam::WebGraph random_graph(std::uint64_t seed, std::size_t n, double p,
                                       const std::string& prefix = "p") {
    std::mt19937_64 rng(seed);
    linkspam::WebGraph::Builder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node(prefix + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (linkspam::uniform_unit(rng) < p) {
                b.add_edge(prefix + std::to_string(i), prefix + std::to_string(j));
            }
        }
    }
    return std::move(b).build();
}

inline linkspam::WebGraph graph_from_edges(
    const std::vector<std::pair<std::string, std::string>>& edges) {
    linkspam::WebGraph::Builder b;
    for (const auto& [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

// All edges of a graph as (source page, target page) name pairs.
inline std::vector<std::pair<std::string, std::string>> edge_list(const linkspam::WebGraph& g) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (linkspam::NodeId u = 0; u < g.node_count(); ++u) {
        for (linkspam::NodeId v : g.out_neighbors(u)) {
            edges.emplace_back(g.page(u), g.page(v));
        }
    }
    return edges;
}

} // namespace testutil
