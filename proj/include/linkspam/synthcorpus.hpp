#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/label.hpp"
#include "linkspam/rng.hpp"
#include "linkspam/webgraph.hpp"

namespace linkspam {

enum class FarmType { Clique, Bipartite };

struct FarmSpec {
    FarmType type = FarmType::Clique;
    // clique farms
    std::size_t domains = 4;
    std::size_t pages_per_domain = 1;
    // bipartite farms (single page per domain)
    std::size_t hubs = 0;
    std::size_t authorities = 0;
};

struct CorpusSpec {
    std::size_t honest_domains = 100;
    std::size_t pages_min = 1; // pages per honest domain, inclusive range
    std::size_t pages_max = 3;
    std::size_t attachment_k = 2; // out-links per new honest domain
    std::vector<FarmSpec> farms;
    std::size_t boost_edges = 0; // random farm-page -> honest-page links
    std::uint64_t seed = 0;
};

struct LabeledCorpus {
    WebGraph graph;
    DomainClustering clustering;
    std::map<std::string, Label> truth;
};

namespace detail {

// Start a builder holding an exact copy of an existing corpus graph.
inline WebGraph::Builder copy_into_builder(const WebGraph& g) {
    WebGraph::Builder b;
    for (NodeId v = 0; v < g.node_count(); ++v) b.add_node(g.page(v));
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.out_neighbors(u)) b.add_edge(g.page(u), g.page(v));
    }
    return b;
}

inline LabeledCorpus finish(WebGraph::Builder&& b, std::map<std::string, Label> truth) {
    LabeledCorpus corpus;
    corpus.graph = std::move(b).build();
    corpus.clustering = build_domain_clustering(corpus.graph);
    corpus.truth = std::move(truth);
    return corpus;
}

inline void require_fresh_domain(const LabeledCorpus& base, const std::string& name) {
    if (base.truth.count(name)) {
        throw InvalidInputError("farm domain already exists: " + name);
    }
}

} // namespace detail

// Honest background: domain-level preferential attachment (new domains link
// to earlier ones with probability proportional to in-degree + 1, without
// replacement), then each domain is expanded into a one-way chain of pages
// and its outgoing domain edges are attached to random member pages.
// Attachment edges always point from newer to older domains, so the honest
// graph never contains a mutual domain pair.
inline LabeledCorpus gen_honest(const CorpusSpec& spec, std::uint64_t seed) {
    if (spec.honest_domains < 2) throw InvalidInputError("need at least 2 honest domains");
    if (spec.pages_min < 1 || spec.pages_min > spec.pages_max) {
        throw InvalidInputError("pages per domain range is invalid");
    }
    if (spec.attachment_k < 1) throw InvalidInputError("attachment_k must be >= 1");

    std::mt19937_64 rng(seed);
    const std::size_t n = spec.honest_domains;
    auto domain_name = [](std::size_t i) { return "site" + std::to_string(i) + ".test"; };

    std::vector<std::size_t> in_deg(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> domain_edges;
    std::vector<char> taken(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t k = std::min(spec.attachment_k, i);
        std::vector<std::size_t> chosen;
        for (std::size_t pick = 0; pick < k; ++pick) {
            double total = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                if (!taken[j]) total += static_cast<double>(in_deg[j] + 1);
            }
            double r = uniform_unit(rng) * total;
            std::size_t target = i; // sentinel
            for (std::size_t j = 0; j < i; ++j) {
                if (taken[j]) continue;
                r -= static_cast<double>(in_deg[j] + 1);
                if (r < 0.0) {
                    target = j;
                    break;
                }
            }
            if (target == i) { // numeric edge: land on the last free slot
                for (std::size_t j = i; j-- > 0;) {
                    if (!taken[j]) {
                        target = j;
                        break;
                    }
                }
            }
            taken[target] = 1;
            chosen.push_back(target);
            domain_edges.emplace_back(i, target);
        }
        for (std::size_t t : chosen) {
            taken[t] = 0;
            in_deg[t]++;
        }
    }

    std::vector<std::vector<std::string>> pages(n);
    WebGraph::Builder b;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = uniform_range(rng, spec.pages_min, spec.pages_max);
        for (std::size_t j = 0; j < count; ++j) {
            pages[i].push_back(domain_name(i) + "/p" + std::to_string(j));
            b.add_node(pages[i].back());
            if (j > 0) b.add_edge(pages[i][j - 1], pages[i][j]);
        }
    }
    for (auto [from, to] : domain_edges) {
        const auto& src = pages[from][uniform_index(rng, pages[from].size())];
        const auto& dst = pages[to][uniform_index(rng, pages[to].size())];
        b.add_edge(src, dst);
    }

    std::map<std::string, Label> truth;
    for (std::size_t i = 0; i < n; ++i) truth.emplace(domain_name(i), Label::NonSpam);
    return detail::finish(std::move(b), std::move(truth));
}

// Fully connected farm: f new spam domains, each ordered pair linked through
// the domains' first pages. Pages inside a farm domain chain in both
// directions, so every edge the farm adds is reciprocated and farm
// reciprocity is exactly 1.
inline LabeledCorpus plant_clique_farm(const LabeledCorpus& base, std::size_t f,
                                       std::size_t pages_per_domain,
                                       std::string_view name_prefix) {
    if (f < 2) throw InvalidInputError("a clique farm needs at least 2 domains");
    if (pages_per_domain < 1) throw InvalidInputError("pages_per_domain must be >= 1");

    auto domain_name = [&](std::size_t i) {
        return std::string(name_prefix) + std::to_string(i) + ".farm";
    };
    for (std::size_t i = 0; i < f; ++i) detail::require_fresh_domain(base, domain_name(i));

    auto b = detail::copy_into_builder(base.graph);
    std::vector<std::string> first_page(f);
    for (std::size_t i = 0; i < f; ++i) {
        std::vector<std::string> members;
        for (std::size_t j = 0; j < pages_per_domain; ++j) {
            members.push_back(domain_name(i) + "/p" + std::to_string(j));
            b.add_node(members.back());
            if (j > 0) {
                b.add_edge(members[j - 1], members[j]);
                b.add_edge(members[j], members[j - 1]);
            }
        }
        first_page[i] = members[0];
    }
    for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t j = 0; j < f; ++j) {
            if (i != j) b.add_edge(first_page[i], first_page[j]);
        }
    }

    auto truth = base.truth;
    for (std::size_t i = 0; i < f; ++i) truth[domain_name(i)] = Label::Spam;
    return detail::finish(std::move(b), std::move(truth));
}

// Boosting farm: hub domains each link to every authority domain (complete
// directed bipartite, one page per domain). Nothing links back, so farm
// reciprocity is exactly 0.
inline LabeledCorpus plant_bipartite_farm(const LabeledCorpus& base, std::size_t hubs,
                                          std::size_t authorities,
                                          std::string_view name_prefix) {
    if (hubs < 1 || authorities < 1) {
        throw InvalidInputError("a bipartite farm needs hubs and authorities");
    }
    auto hub_name = [&](std::size_t i) {
        return std::string(name_prefix) + "h" + std::to_string(i) + ".farm";
    };
    auto auth_name = [&](std::size_t i) {
        return std::string(name_prefix) + "a" + std::to_string(i) + ".farm";
    };
    for (std::size_t i = 0; i < hubs; ++i) detail::require_fresh_domain(base, hub_name(i));
    for (std::size_t i = 0; i < authorities; ++i) {
        detail::require_fresh_domain(base, auth_name(i));
    }

    auto b = detail::copy_into_builder(base.graph);
    for (std::size_t i = 0; i < hubs; ++i) {
        for (std::size_t j = 0; j < authorities; ++j) {
            b.add_edge(hub_name(i) + "/p", auth_name(j) + "/p");
        }
    }

    auto truth = base.truth;
    for (std::size_t i = 0; i < hubs; ++i) truth[hub_name(i)] = Label::Spam;
    for (std::size_t i = 0; i < authorities; ++i) truth[auth_name(i)] = Label::Spam;
    return detail::finish(std::move(b), std::move(truth));
}

// Full corpus: honest background, then each farm in order, then the boost
// edges from random farm pages into random honest pages. Farm placement and
// boosting draw from their own generator so the honest background is
// byte-identical with or without farms.
inline LabeledCorpus generate(const CorpusSpec& spec) {
    LabeledCorpus corpus = gen_honest(spec, spec.seed);
    std::vector<std::string> honest_pages;
    for (NodeId v = 0; v < corpus.graph.node_count(); ++v) {
        honest_pages.push_back(corpus.graph.page(v));
    }

    std::mt19937_64 farm_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t fi = 0; fi < spec.farms.size(); ++fi) {
        const auto& farm = spec.farms[fi];
        if (farm.type == FarmType::Clique) {
            corpus = plant_clique_farm(corpus, farm.domains, farm.pages_per_domain,
                                       "clique" + std::to_string(fi) + "n");
        } else {
            corpus = plant_bipartite_farm(corpus, farm.hubs, farm.authorities,
                                          "bip" + std::to_string(fi));
        }
    }

    if (spec.boost_edges > 0) {
        if (spec.farms.empty()) throw InvalidInputError("boost edges need at least one farm");
        std::vector<std::string> farm_pages;
        for (NodeId v = 0; v < corpus.graph.node_count(); ++v) {
            const std::string& page = corpus.graph.page(v);
            const auto& domain = corpus.clustering.domain(corpus.clustering.domain_of_page(v));
            if (corpus.truth.at(domain) == Label::Spam) farm_pages.push_back(page);
        }
        auto b = detail::copy_into_builder(corpus.graph);
        for (std::size_t e = 0; e < spec.boost_edges; ++e) {
            const auto& src = farm_pages[uniform_index(farm_rng, farm_pages.size())];
            const auto& dst = honest_pages[uniform_index(farm_rng, honest_pages.size())];
            b.add_edge(src, dst);
        }
        corpus = detail::finish(std::move(b), std::move(corpus.truth));
    }
    return corpus;
}

} // namespace linkspam
