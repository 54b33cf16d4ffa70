#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/linkrank.hpp"
#include "linkspam/matrix.hpp"
#include "linkspam/webgraph.hpp"

namespace linkspam {

// Residual reported for a degree distribution that has fewer than two
// positive-degree bins, where no line can be fit. Deliberately large (a
// single-spike degree histogram is the farthest thing from a power law) but
// finite so downstream standardization stays well-behaved.
inline constexpr double kDegenerateDeviation = 1e6;

// Per-domain link features, aggregated from the domain's member pages.
// as_row() flattens to the fixed column order given by kFieldNames; an
// undefined average path length (no intra-domain connected pair) is encoded
// as 0, which cannot collide with a defined value since those are >= 1.
struct FeatureVector {
    std::size_t in_degree = 0;
    std::size_t out_degree = 0;
    double pagerank = 0.0;
    double authority = 0.0;
    double hub = 0.0;
    std::size_t supporters = 0;
    double reciprocity = 0.0;
    std::optional<double> avg_path_length;
    double powerlaw_deviation = 0.0;

    static constexpr std::array<const char*, 9> kFieldNames = {
        "in_degree",   "out_degree",  "pagerank",        "authority",         "hub",
        "supporters",  "reciprocity", "avg_path_length", "powerlaw_deviation"};

    std::array<double, 9> as_row() const {
        return {static_cast<double>(in_degree),
                static_cast<double>(out_degree),
                pagerank,
                authority,
                hub,
                static_cast<double>(supporters),
                reciprocity,
                avg_path_length.value_or(0.0),
                powerlaw_deviation};
    }
};

// Empirical degree distribution P(K) over a page scope.
struct DegreeDistribution {
    std::map<std::size_t, double> probability;
    std::size_t sample_size = 0;
};

enum class DegreeKind { In, Out, Total };

// Number of distinct pages with a directed path into `page` of length at
// most `depth`, the page itself excluded. Exact reverse breadth-first
// search, no estimation.
inline std::size_t supporters(const WebGraph& g, NodeId page, int depth) {
    if (depth < 1) throw InvalidInputError("supporters depth must be >= 1");
    std::vector<char> seen(g.node_count(), 0);
    seen[page] = 1;
    std::vector<NodeId> frontier = {page};
    std::size_t count = 0;
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<NodeId> next;
        for (NodeId v : frontier) {
            for (NodeId u : g.in_neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    next.push_back(u);
                    ++count;
                }
            }
        }
        frontier = std::move(next);
    }
    return count;
}

inline std::size_t supporters(const WebGraph& g, std::string_view page, int depth) {
    return supporters(g, g.require(page), depth);
}

namespace detail {

// Scope membership mask; scope pages must exist in the graph.
inline std::vector<char> scope_mask(const WebGraph& g, std::span<const NodeId> scope) {
    std::vector<char> mask(g.node_count(), 0);
    for (NodeId v : scope) mask[v] = 1;
    return mask;
}

// Mean shortest-path length over ordered connected pairs inside the scope,
// using only edges with both endpoints in scope.
inline std::optional<double> mean_scoped_path_length(const WebGraph& g,
                                                     std::span<const NodeId> scope) {
    auto mask = scope_mask(g, scope);
    double total = 0.0;
    std::size_t pairs = 0;
    std::vector<std::size_t> dist(g.node_count());
    for (NodeId source : scope) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
        dist[source] = 0;
        std::deque<NodeId> queue = {source};
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (NodeId v : g.out_neighbors(u)) {
                if (!mask[v] || dist[v] != std::numeric_limits<std::size_t>::max()) continue;
                dist[v] = dist[u] + 1;
                queue.push_back(v);
                total += static_cast<double>(dist[v]);
                ++pairs;
            }
        }
    }
    if (pairs == 0) return std::nullopt;
    return total / static_cast<double>(pairs);
}

} // namespace detail

// Mean shortest directed path between ordered pairs of pages inside the
// domain, restricted to intra-domain edges. nullopt when no pair connects.
inline std::optional<double> avg_path_length(const WebGraph& g, const DomainClustering& c,
                                             std::string_view domain) {
    DomainId d = c.require(domain);
    return detail::mean_scoped_path_length(g, c.members(d));
}

// Fraction of scope-internal edges (u,v) whose reverse edge (v,u) also
// exists. 0 when the scope has no internal edges.
inline double reciprocity(const WebGraph& g, std::span<const NodeId> scope) {
    if (scope.empty()) throw InvalidInputError("reciprocity requires a non-empty scope");
    auto mask = detail::scope_mask(g, scope);
    std::size_t total = 0, mutual = 0;
    for (NodeId u : scope) {
        for (NodeId v : g.out_neighbors(u)) {
            if (!mask[v]) continue;
            ++total;
            if (g.has_edge(v, u)) ++mutual;
        }
    }
    if (total == 0) return 0.0;
    return static_cast<double>(mutual) / static_cast<double>(total);
}

// Empirical P(K) over the scope for the chosen degree kind, counting only
// edges with both endpoints in scope.
inline DegreeDistribution degree_distribution(const WebGraph& g, std::span<const NodeId> scope,
                                              DegreeKind kind) {
    if (scope.empty()) throw InvalidInputError("degree_distribution requires a non-empty scope");
    auto mask = detail::scope_mask(g, scope);
    std::map<std::size_t, std::size_t> counts;
    for (NodeId u : scope) {
        std::size_t k = 0;
        if (kind == DegreeKind::In || kind == DegreeKind::Total) {
            for (NodeId v : g.in_neighbors(u)) k += mask[v] ? 1 : 0;
        }
        if (kind == DegreeKind::Out || kind == DegreeKind::Total) {
            for (NodeId v : g.out_neighbors(u)) k += mask[v] ? 1 : 0;
        }
        counts[k]++;
    }
    DegreeDistribution dist;
    dist.sample_size = scope.size();
    for (auto [k, n] : counts) {
        dist.probability[k] = static_cast<double>(n) / static_cast<double>(scope.size());
    }
    return dist;
}

struct PowerLawFit {
    double exponent = 0.0;      // gamma in P(K) ~ K^-gamma
    double rms_residual = 0.0;  // in log space; larger = stronger violation
    bool degenerate = false;    // fewer than 2 positive-degree bins
};

// Least-squares fit of log P(K) = c - gamma * log K over the bins with
// K >= 1 and P(K) > 0. The RMS residual measures how far the distribution
// is from any power law; an exact power law gives (numerically) zero.
inline PowerLawFit fit_power_law(const DegreeDistribution& dist) {
    std::vector<double> xs, ys;
    for (auto [k, p] : dist.probability) {
        if (k >= 1 && p > 0.0) {
            xs.push_back(std::log(static_cast<double>(k)));
            ys.push_back(std::log(p));
        }
    }
    if (xs.size() < 2) {
        return {.exponent = 0.0, .rms_residual = kDegenerateDeviation, .degenerate = true};
    }
    const auto n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    // All-equal K values cannot occur here: the map keys are distinct and
    // there are at least two, so sxx > 0.
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    return {.exponent = -slope, .rms_residual = std::sqrt(ss / n), .degenerate = false};
}

inline double powerlaw_deviation(const DegreeDistribution& dist) {
    return fit_power_law(dist).rms_residual;
}

// Per-domain feature extraction. Degree, rank, and supporter fields are sums
// over the domain's member pages; reciprocity, path length, and the
// power-law deviation (of the total-degree distribution) are computed on the
// member set itself. Output is keyed and ordered by domain name.
inline std::map<std::string, FeatureVector> extract_features(const WebGraph& g,
                                                             const DomainClustering& c,
                                                             const PageRankScores& pr,
                                                             const HitsScores& hs, int depth) {
    if (depth < 1) throw InvalidInputError("extract_features depth must be >= 1");
    if (pr.score.size() != g.node_count() || hs.authority.size() != g.node_count() ||
        hs.hub.size() != g.node_count()) {
        throw InvalidInputError("score vectors do not cover the graph");
    }
    std::map<std::string, FeatureVector> features;
    for (DomainId d = 0; d < c.domain_count(); ++d) {
        auto scope = c.members(d);
        FeatureVector fv;
        for (NodeId p : scope) {
            fv.in_degree += g.in_degree(p);
            fv.out_degree += g.out_degree(p);
            fv.pagerank += pr.score[p];
            fv.authority += hs.authority[p];
            fv.hub += hs.hub[p];
            fv.supporters += supporters(g, p, depth);
        }
        fv.reciprocity = reciprocity(g, scope);
        fv.avg_path_length = detail::mean_scoped_path_length(g, scope);
        fv.powerlaw_deviation =
            powerlaw_deviation(degree_distribution(g, scope, DegreeKind::Total));
        features.emplace(c.domain(d), fv);
    }
    return features;
}

// Flatten a feature map into a row-per-domain matrix plus the matching row
// names, in the map's (sorted) key order.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> domains;
};

inline FeatureMatrix feature_matrix(const std::map<std::string, FeatureVector>& features) {
    FeatureMatrix fm;
    fm.values = Matrix(features.size(), FeatureVector::kFieldNames.size());
    std::size_t r = 0;
    for (const auto& [name, fv] : features) {
        fm.domains.push_back(name);
        auto row = fv.as_row();
        for (std::size_t j = 0; j < row.size(); ++j) fm.values(r, j) = row[j];
        ++r;
    }
    return fm;
}

} // namespace linkspam
