#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/label.hpp"
#include "linkspam/matrix.hpp"
#include "linkspam/webgraph.hpp"

namespace linkspam {

// Flagged link farms sit well above small mutual-link counts, so the default
// threshold of a few shared domains keeps ordinary reciprocal pairs out.
struct DetectorConfig {
    int traversal_limit = 2;   // extra hops beyond the direct successors
    std::size_t threshold = 3; // spam when |IN ∩ OUT| reaches this
};

struct SpamVerdict {
    std::string domain;
    Label label = Label::NonSpam;
    std::size_t intersection_size = 0;
    std::set<std::string> in_set;  // evidence: external domains linking in
    std::set<std::string> out_set; // evidence: domains reached by traversal
};

namespace detail {

inline void validate_detector(const DetectorConfig& cfg) {
    if (cfg.traversal_limit < 0) throw InvalidInputError("traversal_limit must be >= 0");
    if (cfg.threshold < 1) throw InvalidInputError("threshold must be >= 1");
}

} // namespace detail

// External domains with at least one link into w.
inline std::set<std::string> collect_in(const DomainClustering& c, std::string_view w) {
    DomainId d = c.require(w);
    std::set<std::string> in;
    for (DomainId u : c.in_neighbors(d)) in.insert(c.domain(u));
    return in;
}

// Breadth-first collection over outgoing domain edges: direct successors are
// always taken, and the walk keeps expanding from newly reached domains
// while the current level is within the traversal limit. Each domain is
// visited once; w itself never appears in the result.
inline std::set<std::string> collect_out(const DomainClustering& c, std::string_view w,
                                         int traversal_limit) {
    if (traversal_limit < 0) throw InvalidInputError("traversal_limit must be >= 0");
    DomainId start = c.require(w);
    std::set<std::string> out;
    std::vector<char> visited(c.domain_count(), 0);
    visited[start] = 1;
    std::vector<DomainId> frontier = {start};
    for (int level = 0; level <= traversal_limit && !frontier.empty(); ++level) {
        std::vector<DomainId> next;
        for (DomainId u : frontier) {
            for (DomainId y : c.out_neighbors(u)) {
                if (visited[y]) continue;
                visited[y] = 1;
                out.insert(c.domain(y));
                next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// Intersection test: a domain whose in-linkers and out-reachable set share
// at least `threshold` domains is marked spam.
inline SpamVerdict mark(const DomainClustering& c, std::string_view w,
                        const DetectorConfig& cfg = {}) {
    detail::validate_detector(cfg);
    SpamVerdict v;
    v.domain = std::string(w);
    v.in_set = collect_in(c, w);
    v.out_set = collect_out(c, w, cfg.traversal_limit);
    for (const auto& d : v.in_set) v.intersection_size += v.out_set.count(d);
    v.label = v.intersection_size >= cfg.threshold ? Label::Spam : Label::NonSpam;
    return v;
}

inline std::map<std::string, SpamVerdict> run_all(const DomainClustering& c,
                                                  const DetectorConfig& cfg = {}) {
    detail::validate_detector(cfg);
    std::map<std::string, SpamVerdict> verdicts;
    for (DomainId d = 0; d < c.domain_count(); ++d) {
        verdicts.emplace(c.domain(d), mark(c, c.domain(d), cfg));
    }
    return verdicts;
}

// Cluster-level label smoothing. Row y of the membership matrix corresponds
// to the y-th domain in the (sorted) label map. Each cluster's spam share
// s_k is the membership-weighted fraction of spam labels; domains whose
// strongest cluster is saturated with spam (s_k >= tau_hi) are pulled to
// spam, ones whose strongest cluster is nearly clean (s_k <= tau_lo) to
// non-spam, and anything in between keeps its own label.
inline std::map<std::string, Label> group_smooth(const std::map<std::string, Label>& labels,
                                                 const Matrix& memberships, double tau_hi,
                                                 double tau_lo) {
    if (!(0.0 <= tau_lo && tau_lo <= tau_hi && tau_hi <= 1.0)) {
        throw InvalidInputError("need 0 <= tau_lo <= tau_hi <= 1");
    }
    if (memberships.rows() != labels.size() || (labels.size() > 0 && memberships.cols() < 1)) {
        throw InvalidInputError("membership matrix does not match the label set");
    }
    const std::size_t k = memberships.cols();

    std::vector<double> spam_mass(k, 0.0), mass(k, 0.0);
    std::size_t y = 0;
    for (const auto& [domain, label] : labels) {
        for (std::size_t c = 0; c < k; ++c) {
            mass[c] += memberships(y, c);
            if (label == Label::Spam) spam_mass[c] += memberships(y, c);
        }
        ++y;
    }
    std::vector<std::optional<double>> share(k);
    for (std::size_t c = 0; c < k; ++c) {
        if (mass[c] > 0.0) share[c] = spam_mass[c] / mass[c];
    }

    std::map<std::string, Label> smoothed;
    y = 0;
    for (const auto& [domain, label] : labels) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (memberships(y, c) > memberships(y, best)) best = c;
        }
        Label out = label;
        if (share[best].has_value()) {
            if (*share[best] >= tau_hi) {
                out = Label::Spam;
            } else if (*share[best] <= tau_lo) {
                out = Label::NonSpam;
            }
        }
        smoothed.emplace(domain, out);
        ++y;
    }
    return smoothed;
}

inline std::map<std::string, Label> group_smooth(const std::map<std::string, SpamVerdict>& verdicts,
                                                 const Matrix& memberships, double tau_hi,
                                                 double tau_lo) {
    std::map<std::string, Label> labels;
    for (const auto& [domain, v] : verdicts) labels.emplace(domain, v.label);
    return group_smooth(labels, memberships, tau_hi, tau_lo);
}

} // namespace linkspam
