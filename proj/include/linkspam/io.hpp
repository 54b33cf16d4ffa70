#pragma once

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "linkspam/classifier.hpp"
#include "linkspam/detector.hpp"
#include "linkspam/error.hpp"
#include "linkspam/features.hpp"
#include "linkspam/label.hpp"
#include "linkspam/matrix.hpp"
#include "linkspam/webgraph.hpp"

// Report formats shared by the CLI and the tests: TSV score/label tables,
// feature and membership CSVs, verdict JSON/TSV, metrics CSVs, and Graphviz
// DOT export of the domain graph. Every writer emits deterministic output:
// fixed row orderings and fixed printf-style number formatting.

namespace linkspam {

namespace detail {

inline std::string fmt_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string fmt_f6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string fmt_metric(const std::optional<double>& x) {
    return x ? fmt_f6(*x) : "NA";
}

inline std::string dot_quote(std::string_view s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
    }
    q += '"';
    return q;
}

} // namespace detail

// Pages ranked best-first: descending score, ties broken by page name.
// One `page<TAB>score` line per node, scores printed with %.12g.
inline void save_scores_tsv(std::ostream& out, const WebGraph& g, std::span<const double> scores) {
    if (scores.size() != g.node_count())
        throw InvalidInputError("score vector size does not match node count");
    std::vector<NodeId> order(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return g.page(a) < g.page(b);
    });
    for (NodeId v : order) {
        out << g.page(v) << '\t' << detail::fmt_g12(scores[v]) << '\n';
    }
}

// `domain<TAB>spam|nonspam` lines in domain order.
inline void save_labels_tsv(std::ostream& out, const std::map<std::string, Label>& labels) {
    for (const auto& [domain, label] : labels) {
        out << domain << '\t' << label_to_string(label) << '\n';
    }
}

// Parses the labels format; `#` comments and blank lines are skipped, and
// malformed lines, unknown label tokens, or repeated domains report their
// line number.
inline std::map<std::string, Label> load_labels_tsv(std::istream& in) {
    std::map<std::string, Label> labels;
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
        std::string domain = line.substr(0, tab);
        std::string_view token(line.data() + tab + 1, line.size() - tab - 1);
        if (domain.empty()) throw ParseError(line_no, "empty domain");
        if (token != "spam" && token != "nonspam")
            throw ParseError(line_no, "unknown label: " + std::string(token));
        auto [it, inserted] = labels.emplace(std::move(domain), label_from_string(token));
        if (!inserted) throw ParseError(line_no, "duplicate domain: " + it->first);
    }
    return labels;
}

// CSV of per-domain feature rows in domain order. Counts print as integers,
// real values with %.12g, and an undefined average path length as NA.
inline void save_features_csv(std::ostream& out, const std::map<std::string, FeatureVector>& features) {
    out << "domain";
    for (const char* name : FeatureVector::kFieldNames) out << ',' << name;
    out << '\n';
    for (const auto& [domain, f] : features) {
        out << domain << ',' << f.in_degree << ',' << f.out_degree << ','
            << detail::fmt_g12(f.pagerank) << ',' << detail::fmt_g12(f.authority) << ','
            << detail::fmt_g12(f.hub) << ',' << f.supporters << ','
            << detail::fmt_g12(f.reciprocity) << ','
            << (f.avg_path_length ? detail::fmt_g12(*f.avg_path_length) : "NA") << ','
            << detail::fmt_g12(f.powerlaw_deviation) << '\n';
    }
}

// CSV of membership rows; row i belongs to domains[i], one column per cluster.
inline void save_memberships_csv(std::ostream& out, const Matrix& memberships,
                                 std::span<const std::string> domains) {
    if (memberships.rows() != domains.size())
        throw InvalidInputError("membership rows do not match domain count");
    out << "domain";
    for (std::size_t k = 0; k < memberships.cols(); ++k) out << ",cluster" << k;
    out << '\n';
    for (std::size_t i = 0; i < memberships.rows(); ++i) {
        out << domains[i];
        for (std::size_t k = 0; k < memberships.cols(); ++k)
            out << ',' << detail::fmt_g12(memberships(i, k));
        out << '\n';
    }
}

// A named alternative labeling of the same domains (e.g. after cluster
// smoothing), stored next to the raw verdict in the JSON report.
struct LabelVariant {
    std::string name;
    std::map<std::string, Label> labels;
};

// JSON array of verdicts in domain order. Each element carries the verdict
// label, the intersection size, both evidence sets, and one extra field per
// variant (only variants that cover the domain appear on it).
inline void save_verdicts_json(std::ostream& out, const std::map<std::string, SpamVerdict>& verdicts,
                               std::span<const LabelVariant> variants = {}) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [domain, v] : verdicts) {
        nlohmann::ordered_json obj;
        obj["domain"] = domain;
        obj["label"] = label_to_string(v.label);
        obj["intersection_size"] = v.intersection_size;
        obj["in_set"] = v.in_set;
        obj["out_set"] = v.out_set;
        for (const auto& variant : variants) {
            auto it = variant.labels.find(domain);
            if (it != variant.labels.end()) obj[variant.name] = label_to_string(it->second);
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

struct LoadedVerdicts {
    std::map<std::string, SpamVerdict> verdicts;
    // variant name -> domain -> label, for every "label_*" field present
    std::map<std::string, std::map<std::string, Label>> variants;
};

inline LoadedVerdicts load_verdicts_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("verdicts json: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidInputError("verdicts json: expected a top-level array");
    LoadedVerdicts result;
    try {
        for (const auto& obj : doc) {
            SpamVerdict v;
            v.domain = obj.at("domain").get<std::string>();
            v.label = label_from_string(obj.at("label").get<std::string>());
            v.intersection_size = obj.at("intersection_size").get<std::size_t>();
            for (const auto& s : obj.at("in_set")) v.in_set.insert(s.get<std::string>());
            for (const auto& s : obj.at("out_set")) v.out_set.insert(s.get<std::string>());
            for (const auto& [key, value] : obj.items()) {
                if (key.rfind("label_", 0) == 0)
                    result.variants[key][v.domain] = label_from_string(value.get<std::string>());
            }
            std::string domain = v.domain;
            if (!result.verdicts.emplace(std::move(domain), std::move(v)).second)
                throw InvalidInputError("verdicts json: duplicate domain");
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("verdicts json: ") + e.what());
    }
    return result;
}

// `domain<TAB>label<TAB>intersection_size` in domain order; the JSON report
// is the complete form, this one greps well.
inline void save_verdicts_tsv(std::ostream& out, const std::map<std::string, SpamVerdict>& verdicts) {
    for (const auto& [domain, v] : verdicts) {
        out << domain << '\t' << label_to_string(v.label) << '\t' << v.intersection_size << '\n';
    }
}

// One evaluation row: a labeling variant scored against ground truth.
struct EvalRow {
    std::string grouping; // "without" or "with"
    std::string labeling; // "base" or "cluster"
    ConfusionMatrix confusion;
    Metrics scores;
    std::size_t skipped = 0; // verdict domains missing from the labels file
};

// CSV with one row per (grouping, labeling) combination; undefined metrics
// print as NA.
inline void save_eval_csv(std::ostream& out, std::span<const EvalRow> rows) {
    out << "grouping,labeling,tn,fp,fn,tp,tpr,fpr,precision,f1\n";
    for (const auto& r : rows) {
        out << r.grouping << ',' << r.labeling << ',' << r.confusion.x << ',' << r.confusion.y
            << ',' << r.confusion.z << ',' << r.confusion.w << ','
            << detail::fmt_metric(r.scores.tpr) << ',' << detail::fmt_metric(r.scores.fpr) << ','
            << detail::fmt_metric(r.scores.precision) << ',' << detail::fmt_metric(r.scores.f1)
            << '\n';
    }
}

// CSV with one row per cost ratio, confusion counts summed over folds.
inline void save_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "cost_ratio,tn,fp,fn,tp,tpr,fpr,precision,f1\n";
    for (const auto& r : rows) {
        out << detail::fmt_g12(r.cost_ratio) << ',' << r.confusion.x << ',' << r.confusion.y
            << ',' << r.confusion.z << ',' << r.confusion.w << ','
            << detail::fmt_metric(r.scores.tpr) << ',' << detail::fmt_metric(r.scores.fpr) << ','
            << detail::fmt_metric(r.scores.precision) << ',' << detail::fmt_metric(r.scores.f1)
            << '\n';
    }
}

// Graphviz DOT text for the domain graph: one quoted node line per domain
// (spam domains filled tomato), then one line per domain edge, both in
// sorted order. Quotes and backslashes in names are escaped.
inline void export_dot(std::ostream& out, const DomainClustering& c,
                       const std::map<std::string, Label>* labels = nullptr) {
    out << "digraph domains {\n";
    for (DomainId d = 0; d < c.domain_count(); ++d) {
        out << "  " << detail::dot_quote(c.domain(d));
        if (labels) {
            auto it = labels->find(c.domain(d));
            if (it != labels->end() && it->second == Label::Spam)
                out << " [style=filled, fillcolor=tomato]";
        }
        out << ";\n";
    }
    for (DomainId d = 0; d < c.domain_count(); ++d) {
        for (DomainId t : c.out_neighbors(d)) {
            out << "  " << detail::dot_quote(c.domain(d)) << " -> " << detail::dot_quote(c.domain(t))
                << ";\n";
        }
    }
    out << "}\n";
}

} // namespace linkspam
