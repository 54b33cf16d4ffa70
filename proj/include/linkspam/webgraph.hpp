#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linkspam/error.hpp"

namespace linkspam {

using NodeId = std::uint32_t;
using DomainId = std::uint32_t;

namespace detail {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

template <typename Id>
using StringIndex = std::unordered_map<std::string, Id, StringHash, std::equal_to<>>;

// Sorts and deduplicates each adjacency list in place.
template <typename Id>
void normalize_adjacency(std::vector<std::vector<Id>>& adj) {
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

} // namespace detail

// Immutable directed page-level graph. Pages are opaque identifier strings;
// internally each page gets a dense NodeId in first-seen order. Forward and
// reverse adjacency lists are sorted, deduplicated, and exact transposes of
// each other. Safe for concurrent reads once built.
class WebGraph {
public:
    class Builder {
    public:
        NodeId add_node(std::string_view page) {
            auto it = index_.find(page);
            if (it != index_.end()) return it->second;
            auto id = static_cast<NodeId>(nodes_.size());
            nodes_.emplace_back(page);
            index_.emplace(nodes_.back(), id);
            return id;
        }

        void add_edge(std::string_view source, std::string_view target) {
            NodeId u = add_node(source);
            NodeId v = add_node(target);
            edges_.emplace_back(u, v);
        }

        WebGraph build() && {
            WebGraph g;
            g.nodes_ = std::move(nodes_);
            g.index_ = std::move(index_);
            g.fwd_.resize(g.nodes_.size());
            g.rev_.resize(g.nodes_.size());
            for (auto [u, v] : edges_) {
                g.fwd_[u].push_back(v);
                g.rev_[v].push_back(u);
            }
            detail::normalize_adjacency(g.fwd_);
            detail::normalize_adjacency(g.rev_);
            g.edge_count_ = 0;
            for (const auto& list : g.fwd_) g.edge_count_ += list.size();
            return g;
        }

    private:
        std::vector<std::string> nodes_;
        detail::StringIndex<NodeId> index_;
        std::vector<std::pair<NodeId, NodeId>> edges_;
    };

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    const std::string& page(NodeId v) const { return nodes_[v]; }
    const std::vector<std::string>& pages() const noexcept { return nodes_; }

    std::optional<NodeId> find(std::string_view page) const {
        auto it = index_.find(page);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    NodeId require(std::string_view page) const {
        auto id = find(page);
        if (!id) throw NotFoundError("unknown page: " + std::string(page));
        return *id;
    }

    std::span<const NodeId> out_neighbors(NodeId v) const { return fwd_[v]; }
    std::span<const NodeId> in_neighbors(NodeId v) const { return rev_[v]; }

    std::size_t out_degree(NodeId v) const { return fwd_[v].size(); }
    std::size_t in_degree(NodeId v) const { return rev_[v].size(); }

    bool has_edge(NodeId u, NodeId v) const {
        return std::binary_search(fwd_[u].begin(), fwd_[u].end(), v);
    }

private:
    std::vector<std::string> nodes_;
    detail::StringIndex<NodeId> index_;
    std::vector<std::vector<NodeId>> fwd_;
    std::vector<std::vector<NodeId>> rev_;
    std::size_t edge_count_ = 0;
};

// Reads the edge-list format: one `source<TAB>target` pair per line, UTF-8,
// `#` starts a comment line, blank (or whitespace-only) lines are skipped.
// Duplicate edges collapse to one. Identifiers must be non-empty and free of
// tabs and newlines. An empty stream yields an empty graph.
inline WebGraph load_edge_list(std::istream& in) {
    WebGraph::Builder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw ParseError(line_no, "expected 2 tab-separated fields");
        std::string_view src(line.data(), tab);
        std::string_view dst(line.data() + tab + 1, line.size() - tab - 1);
        if (src.empty() || dst.empty())
            throw ParseError(line_no, "empty identifier");
        builder.add_edge(src, dst);
    }
    return std::move(builder).build();
}

// Writes the edge-list format with edges sorted by (source, target).
// load -> save -> load is the identity on the edge set.
inline void save_edge_list(const WebGraph& g, std::ostream& out) {
    std::vector<std::pair<std::string_view, std::string_view>> edges;
    edges.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.out_neighbors(u)) {
            edges.emplace_back(g.page(u), g.page(v));
        }
    }
    std::sort(edges.begin(), edges.end());
    for (auto [src, dst] : edges) {
        out << src << '\t' << dst << '\n';
    }
}

// Maps a page identifier to its registrable domain: strip scheme, path and
// port, lowercase the host, drop one leading "www.", keep the last two
// dot-separated labels (single-label hosts stay whole). Unparseable input
// falls back to the whole identifier lowercased; this never fails. The rule
// is deliberately self-contained (no public-suffix database) and is the one
// place to swap in a different clustering granularity.
inline std::string domain_of(std::string_view page) {
    auto lowercase = [](std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };

    std::string_view host = page;
    if (auto scheme = host.find("://"); scheme != std::string_view::npos)
        host = host.substr(scheme + 3);
    if (auto slash = host.find('/'); slash != std::string_view::npos)
        host = host.substr(0, slash);
    if (auto colon = host.find(':'); colon != std::string_view::npos)
        host = host.substr(0, colon);
    while (!host.empty() && host.back() == '.') host.remove_suffix(1);
    while (!host.empty() && host.front() == '.') host.remove_prefix(1);
    if (host.empty()) return lowercase(std::string(page));

    std::string h = lowercase(std::string(host));
    if (h.size() > 4 && h.compare(0, 4, "www.") == 0) h.erase(0, 4);

    auto last = h.rfind('.');
    if (last == std::string::npos) return h; // single label
    auto second = h.rfind('.', last - 1);
    if (second == std::string::npos) return h; // exactly two labels
    return h.substr(second + 1);
}

// Page-to-domain assignment plus the collapsed domain-level graph. Domain
// ids are assigned in lexicographic order of the domain name, so id order is
// the canonical output order everywhere. The domain graph has an edge
// (d1, d2) iff some page of d1 links to some page of d2 with d1 != d2;
// intra-domain edges never appear in it.
class DomainClustering {
public:
    std::size_t domain_count() const noexcept { return domains_.size(); }
    std::size_t domain_edge_count() const noexcept { return edge_count_; }

    const std::string& domain(DomainId d) const { return domains_[d]; }
    const std::vector<std::string>& domains() const noexcept { return domains_; }

    std::optional<DomainId> find(std::string_view name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    DomainId require(std::string_view name) const {
        auto id = find(name);
        if (!id) throw NotFoundError("unknown domain: " + std::string(name));
        return *id;
    }

    DomainId domain_of_page(NodeId page) const { return page_domain_[page]; }

    std::span<const NodeId> members(DomainId d) const { return members_[d]; }
    std::span<const DomainId> out_neighbors(DomainId d) const { return fwd_[d]; }
    std::span<const DomainId> in_neighbors(DomainId d) const { return rev_[d]; }

private:
    friend DomainClustering build_domain_clustering(const WebGraph&);

    std::vector<std::string> domains_;
    detail::StringIndex<DomainId> index_;
    std::vector<DomainId> page_domain_;
    std::vector<std::vector<NodeId>> members_;
    std::vector<std::vector<DomainId>> fwd_;
    std::vector<std::vector<DomainId>> rev_;
    std::size_t edge_count_ = 0;
};

inline DomainClustering build_domain_clustering(const WebGraph& g) {
    DomainClustering c;

    std::vector<std::string> page_domain_names;
    page_domain_names.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        page_domain_names.push_back(domain_of(g.page(v)));
    }

    c.domains_ = page_domain_names;
    std::sort(c.domains_.begin(), c.domains_.end());
    c.domains_.erase(std::unique(c.domains_.begin(), c.domains_.end()), c.domains_.end());
    for (DomainId d = 0; d < c.domains_.size(); ++d) c.index_.emplace(c.domains_[d], d);

    c.page_domain_.resize(g.node_count());
    c.members_.resize(c.domains_.size());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        DomainId d = c.index_.find(page_domain_names[v])->second;
        c.page_domain_[v] = d;
        c.members_[d].push_back(v);
    }

    c.fwd_.resize(c.domains_.size());
    c.rev_.resize(c.domains_.size());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        DomainId du = c.page_domain_[u];
        for (NodeId v : g.out_neighbors(u)) {
            DomainId dv = c.page_domain_[v];
            if (du == dv) continue;
            c.fwd_[du].push_back(dv);
            c.rev_[dv].push_back(du);
        }
    }
    detail::normalize_adjacency(c.fwd_);
    detail::normalize_adjacency(c.rev_);
    c.edge_count_ = 0;
    for (const auto& list : c.fwd_) c.edge_count_ += list.size();
    return c;
}

// External domains with at least one link into d (depth 1), sorted by name.
inline std::vector<std::string> in_domains(const DomainClustering& c, std::string_view d) {
    DomainId id = c.require(d);
    std::vector<std::string> result;
    for (DomainId n : c.in_neighbors(id)) result.push_back(c.domain(n));
    std::sort(result.begin(), result.end());
    return result;
}

// External domains d links to (depth 1), sorted by name.
inline std::vector<std::string> out_domains(const DomainClustering& c, std::string_view d) {
    DomainId id = c.require(d);
    std::vector<std::string> result;
    for (DomainId n : c.out_neighbors(id)) result.push_back(c.domain(n));
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace linkspam
