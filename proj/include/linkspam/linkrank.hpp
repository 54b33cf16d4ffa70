#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/webgraph.hpp"

namespace linkspam {

struct RankConfig {
    double alpha = 0.15;      // random-jump probability, must be in (0,1)
    double epsilon = 1e-8;    // L1 convergence tolerance between sweeps
    int max_iterations = 100;
};

namespace detail {

inline void validate(const RankConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw InvalidInputError("alpha must be in (0,1)");
    if (cfg.epsilon < 0.0)
        throw InvalidInputError("epsilon must be >= 0");
    if (cfg.max_iterations < 1)
        throw InvalidInputError("max_iterations must be >= 1");
}

} // namespace detail

// Scores are indexed by NodeId. Entries sum to 1 and every entry is at least
// alpha/N.
struct PageRankScores {
    std::vector<double> score;
    int iterations = 0;
    bool converged = false;
};

// Power iteration on PR(u) = (1-a) * sum_{v->u} PR(v)/O(v) + a/N, starting
// uniform. Rank mass of dangling pages (out-degree 0) is redistributed
// uniformly over all N pages inside the damped term, which keeps the total
// mass at exactly 1 every sweep. Stops when the L1 change between sweeps is
// <= epsilon or after max_iterations, whichever comes first.
inline PageRankScores pagerank(const WebGraph& g, const RankConfig& cfg = {}) {
    detail::validate(cfg);
    const std::size_t n = g.node_count();
    if (n == 0) throw InvalidInputError("pagerank requires a non-empty graph");

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> rank(n, inv_n);
    std::vector<double> next(n);

    PageRankScores result;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            if (g.out_degree(v) == 0) dangling += rank[v];
        }
        const double base = cfg.alpha * inv_n + (1.0 - cfg.alpha) * dangling * inv_n;
        for (NodeId u = 0; u < n; ++u) {
            double in_mass = 0.0;
            for (NodeId v : g.in_neighbors(u)) {
                in_mass += rank[v] / static_cast<double>(g.out_degree(v));
            }
            next[u] = base + (1.0 - cfg.alpha) * in_mass;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - rank[i]);
        rank.swap(next);
        result.iterations = iter;
        if (delta <= cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.score = std::move(rank);
    return result;
}

// Hub and authority scores indexed by NodeId. After every sweep each vector
// has Euclidean norm 1, except on an edgeless graph where both are all-zero
// and `edgeless` is set (there is no link direction to score).
struct HitsScores {
    std::vector<double> hub;
    std::vector<double> authority;
    int iterations = 0;
    bool converged = false;
    bool edgeless = false;
};

// Alternating updates A(u) = sum_{v->u} H(v), then H(v) = sum_{v->u} A(u)
// against the fresh authority vector, each followed by Euclidean
// normalization. All-ones initialization. Stops when the combined L1 change
// of both vectors is <= epsilon or after max_iterations.
inline HitsScores hits(const WebGraph& g, const RankConfig& cfg = {}) {
    detail::validate(cfg);
    const std::size_t n = g.node_count();
    if (n == 0) throw InvalidInputError("hits requires a non-empty graph");

    HitsScores result;
    if (g.edge_count() == 0) {
        result.hub.assign(n, 0.0);
        result.authority.assign(n, 0.0);
        result.edgeless = true;
        result.converged = true;
        return result;
    }

    auto normalize = [](std::vector<double>& v) {
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (double& x : v) x /= norm;
        }
    };

    std::vector<double> hub(n, 1.0), authority(n, 1.0);
    std::vector<double> new_hub(n), new_authority(n);
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        for (NodeId u = 0; u < n; ++u) {
            double a = 0.0;
            for (NodeId v : g.in_neighbors(u)) a += hub[v];
            new_authority[u] = a;
        }
        normalize(new_authority);
        for (NodeId v = 0; v < n; ++v) {
            double h = 0.0;
            for (NodeId u : g.out_neighbors(v)) h += new_authority[u];
            new_hub[v] = h;
        }
        normalize(new_hub);

        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            delta += std::abs(new_authority[i] - authority[i]);
            delta += std::abs(new_hub[i] - hub[i]);
        }
        authority.swap(new_authority);
        hub.swap(new_hub);
        result.iterations = iter;
        if (delta <= cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.hub = std::move(hub);
    result.authority = std::move(authority);
    return result;
}

} // namespace linkspam
