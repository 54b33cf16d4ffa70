#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "linkspam/classifier.hpp"
#include "linkspam/detector.hpp"
#include "linkspam/fcm.hpp"
#include "linkspam/features.hpp"
#include "linkspam/io.hpp"
#include "linkspam/linkrank.hpp"
#include "linkspam/synthcorpus.hpp"
#include "linkspam/webgraph.hpp"

namespace fs = std::filesystem;
using namespace linkspam;

namespace {

// ---------------------------------------------------------------------------
// plumbing
// ---------------------------------------------------------------------------

// File-system level failures; mapped to the "io" error category.
struct CliIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return s;
}

int fail(const char* category, const std::string& message) {
    std::cerr << "error: " << category << ": " << one_line(message) << '\n';
    return 1;
}

WebGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw CliIoError("cannot open " + path);
    return load_edge_list(in);
}

std::map<std::string, Label> load_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw CliIoError("cannot open " + path);
    return load_labels_tsv(in);
}

LoadedVerdicts load_verdicts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw CliIoError("cannot open " + path);
    return load_verdicts_json(in);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw CliIoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out.good()) throw CliIoError("write failed: " + path.string());
}

void write_manifest(const fs::path& path, const std::string& command,
                    nlohmann::ordered_json inputs, nlohmann::ordered_json params,
                    std::vector<std::string> outputs) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["inputs"] = std::move(inputs);
    m["params"] = std::move(params);
    m["outputs"] = std::move(outputs);
    write_file(path, m.dump(2) + "\n");
}

std::map<std::string, Label> verdict_labels(const std::map<std::string, SpamVerdict>& verdicts) {
    std::map<std::string, Label> labels;
    for (const auto& [domain, v] : verdicts) labels.emplace(domain, v.label);
    return labels;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOpts {
    std::string edges;
};

void run_ingest(const IngestOpts& o) {
    WebGraph g = load_graph(o.edges);
    DomainClustering c = build_domain_clustering(g);
    std::cout << "pages: " << g.node_count() << '\n'
              << "edges: " << g.edge_count() << '\n'
              << "domains: " << c.domain_count() << '\n'
              << "domain-edges: " << c.domain_edge_count() << '\n';
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

struct DetectOpts {
    std::string edges;
    std::string out;
    int tra_lvl = 2;
    std::size_t tv = 3;
    bool group = false;
    double alpha = 0.15;
    std::optional<double> epsilon;  // overrides both defaults: 1e-8 rank, 1e-6 fcm
    std::optional<int> max_iter;    // overrides both defaults: 100 rank, 300 fcm
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    int depth = 3;
    double tau_hi = 0.7;
    double tau_lo = 0.3;
    std::uint64_t seed = 0;
};

void run_detect(const DetectOpts& o) {
    WebGraph g = load_graph(o.edges);
    DomainClustering c = build_domain_clustering(g);

    DetectorConfig dcfg;
    dcfg.traversal_limit = o.tra_lvl;
    dcfg.threshold = o.tv;
    auto verdicts = run_all(c, dcfg);

    fs::create_directories(o.out);
    std::vector<LabelVariant> variants;
    std::vector<std::string> outputs{"verdicts.json", "verdicts.tsv"};

    const double rank_epsilon = o.epsilon.value_or(1e-8);
    const double fcm_epsilon = o.epsilon.value_or(1e-6);
    const int rank_max_iter = o.max_iter.value_or(100);
    const std::size_t fcm_max_iter = static_cast<std::size_t>(o.max_iter.value_or(300));

    if (o.group) {
        RankConfig rcfg;
        rcfg.alpha = o.alpha;
        rcfg.epsilon = rank_epsilon;
        rcfg.max_iterations = rank_max_iter;
        PageRankScores pr = pagerank(g, rcfg);
        HitsScores hs = hits(g, rcfg);

        auto features = extract_features(g, c, pr, hs, o.depth);
        FeatureMatrix fm = feature_matrix(features);

        FcmConfig fcfg;
        fcfg.clusters = o.clusters;
        fcfg.fuzzifier = o.fuzzifier;
        fcfg.epsilon = fcm_epsilon;
        fcfg.max_iterations = fcm_max_iter;
        fcfg.seed = o.seed;
        FcmResult fcm = fcm_fit(standardize_columns(fm.values), fcfg);

        auto base = verdict_labels(verdicts);
        auto cluster = group_smooth(base, fcm.memberships, 0.5, 0.5);
        auto grouped = group_smooth(base, fcm.memberships, o.tau_hi, o.tau_lo);
        auto cluster_grouped = group_smooth(cluster, fcm.memberships, o.tau_hi, o.tau_lo);
        variants.push_back({"label_cluster", std::move(cluster)});
        variants.push_back({"label_grouped", std::move(grouped)});
        variants.push_back({"label_cluster_grouped", std::move(cluster_grouped)});

        std::ostringstream buf;
        save_features_csv(buf, features);
        write_file(fs::path(o.out) / "features.csv", buf.str());

        buf.str("");
        save_memberships_csv(buf, fcm.memberships, fm.domains);
        write_file(fs::path(o.out) / "memberships.csv", buf.str());

        buf.str("");
        save_scores_tsv(buf, g, pr.score);
        write_file(fs::path(o.out) / "pagerank.tsv", buf.str());

        buf.str("");
        save_scores_tsv(buf, g, hs.authority);
        write_file(fs::path(o.out) / "authority.tsv", buf.str());

        buf.str("");
        save_scores_tsv(buf, g, hs.hub);
        write_file(fs::path(o.out) / "hub.tsv", buf.str());

        outputs.insert(outputs.end(), {"features.csv", "memberships.csv", "pagerank.tsv",
                                       "authority.tsv", "hub.tsv"});
    }

    std::ostringstream buf;
    save_verdicts_json(buf, verdicts, variants);
    write_file(fs::path(o.out) / "verdicts.json", buf.str());

    buf.str("");
    save_verdicts_tsv(buf, verdicts);
    write_file(fs::path(o.out) / "verdicts.tsv", buf.str());

    nlohmann::ordered_json params{{"traversal_limit", o.tra_lvl}, {"threshold", o.tv},
                                  {"group", o.group}};
    if (o.group) {
        params["alpha"] = o.alpha;
        params["rank_epsilon"] = rank_epsilon;
        params["rank_max_iterations"] = rank_max_iter;
        params["fcm_epsilon"] = fcm_epsilon;
        params["fcm_max_iterations"] = fcm_max_iter;
        params["clusters"] = o.clusters;
        params["fuzzifier"] = o.fuzzifier;
        params["depth"] = o.depth;
        params["tau_hi"] = o.tau_hi;
        params["tau_lo"] = o.tau_lo;
        params["seed"] = o.seed;
    }
    outputs.push_back("run_manifest.json");
    write_manifest(fs::path(o.out) / "run_manifest.json", "detect", {{"edges", o.edges}},
                   std::move(params), std::move(outputs));

    std::size_t spam = 0;
    for (const auto& [domain, v] : verdicts) spam += v.label == Label::Spam;
    std::cout << "domains: " << c.domain_count() << '\n' << "spam: " << spam << '\n';
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOpts {
    std::string verdicts;
    std::string labels;
    std::string out; // empty: CSV to stdout
};

EvalRow tally(const std::map<std::string, Label>& predicted,
              const std::map<std::string, Label>& truth, std::string grouping,
              std::string labeling) {
    EvalRow row;
    row.grouping = std::move(grouping);
    row.labeling = std::move(labeling);
    for (const auto& [domain, pred] : predicted) {
        auto it = truth.find(domain);
        if (it == truth.end()) {
            ++row.skipped;
            continue;
        }
        const bool said_spam = pred == Label::Spam;
        const bool is_spam = it->second == Label::Spam;
        if (said_spam && is_spam) ++row.confusion.w;
        else if (said_spam && !is_spam) ++row.confusion.y;
        else if (!said_spam && is_spam) ++row.confusion.z;
        else ++row.confusion.x;
    }
    row.scores = metrics(row.confusion);
    return row;
}

void run_evaluate(const EvaluateOpts& o) {
    LoadedVerdicts lv = load_verdicts(o.verdicts);
    auto truth = load_labels(o.labels);

    std::vector<EvalRow> rows;
    rows.push_back(tally(verdict_labels(lv.verdicts), truth, "without", "base"));
    static const std::pair<const char*, std::pair<const char*, const char*>> kVariantRows[] = {
        {"label_cluster", {"without", "cluster"}},
        {"label_grouped", {"with", "base"}},
        {"label_cluster_grouped", {"with", "cluster"}},
    };
    for (const auto& [field, names] : kVariantRows) {
        auto it = lv.variants.find(field);
        if (it != lv.variants.end())
            rows.push_back(tally(it->second, truth, names.first, names.second));
    }

    if (rows.front().skipped > 0)
        std::cerr << "warning: skipped " << rows.front().skipped << " domains with no label\n";

    std::ostringstream csv;
    save_eval_csv(csv, rows);
    if (o.out.empty()) {
        std::cout << csv.str();
        return;
    }
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "metrics.csv", csv.str());
    write_manifest(fs::path(o.out) / "run_manifest.json", "evaluate",
                   {{"verdicts", o.verdicts}, {"labels", o.labels}},
                   {{"skipped", rows.front().skipped}}, {"metrics.csv", "run_manifest.json"});
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOpts {
    std::string edges;
    std::string labels;
    std::string out; // empty: CSV to stdout
    std::vector<double> cost_ratios;
    std::size_t folds = 5;
    std::uint64_t seed = 0;
    double alpha = 0.15;
    std::optional<double> epsilon;
    std::optional<int> max_iter;
    int depth = 3;
};

void run_sweep(const SweepOpts& o) {
    WebGraph g = load_graph(o.edges);
    DomainClustering c = build_domain_clustering(g);
    auto truth = load_labels(o.labels);

    RankConfig rcfg;
    rcfg.alpha = o.alpha;
    rcfg.epsilon = o.epsilon.value_or(1e-8);
    rcfg.max_iterations = o.max_iter.value_or(100);
    PageRankScores pr = pagerank(g, rcfg);
    HitsScores hs = hits(g, rcfg);
    auto features = extract_features(g, c, pr, hs, o.depth);
    FeatureMatrix fm = feature_matrix(features);

    std::vector<std::size_t> keep;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < fm.domains.size(); ++i) {
        auto it = truth.find(fm.domains[i]);
        if (it == truth.end()) continue;
        keep.push_back(i);
        labels.push_back(it->second);
    }
    if (keep.size() < fm.domains.size())
        std::cerr << "warning: skipped " << fm.domains.size() - keep.size()
                  << " domains with no label\n";

    Matrix data(keep.size(), fm.values.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t f = 0; f < fm.values.cols(); ++f) data(r, f) = fm.values(keep[r], f);
    }

    std::vector<double> ratios = o.cost_ratios.empty() ? default_cost_ratios() : o.cost_ratios;
    auto rows = cost_sweep(data, labels, ratios, o.folds, o.seed);

    std::ostringstream csv;
    save_sweep_csv(csv, rows);
    if (o.out.empty()) {
        std::cout << csv.str();
        return;
    }
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "sweep.csv", csv.str());
    write_manifest(fs::path(o.out) / "run_manifest.json", "sweep",
                   {{"edges", o.edges}, {"labels", o.labels}},
                   {{"cost_ratios", ratios},
                    {"folds", o.folds},
                    {"seed", o.seed},
                    {"alpha", o.alpha},
                    {"rank_epsilon", rcfg.epsilon},
                    {"rank_max_iterations", rcfg.max_iterations},
                    {"depth", o.depth},
                    {"instances", keep.size()}},
                   {"sweep.csv", "run_manifest.json"});
}

// ---------------------------------------------------------------------------
// export-dot
// ---------------------------------------------------------------------------

struct ExportDotOpts {
    std::string edges;
    std::string labels;   // truth labels for styling
    std::string verdicts; // detector verdicts for styling (wins over --labels)
    std::string out;      // empty: DOT to stdout
};

void run_export_dot(const ExportDotOpts& o) {
    WebGraph g = load_graph(o.edges);
    DomainClustering c = build_domain_clustering(g);

    std::map<std::string, Label> style;
    bool styled = false;
    if (!o.verdicts.empty()) {
        style = verdict_labels(load_verdicts(o.verdicts).verdicts);
        styled = true;
    } else if (!o.labels.empty()) {
        style = load_labels(o.labels);
        styled = true;
    }

    std::ostringstream dot;
    export_dot(dot, c, styled ? &style : nullptr);
    if (o.out.empty()) {
        std::cout << dot.str();
        return;
    }
    write_file(o.out, dot.str());
    nlohmann::ordered_json inputs{{"edges", o.edges}};
    if (!o.verdicts.empty()) inputs["verdicts"] = o.verdicts;
    if (!o.labels.empty()) inputs["labels"] = o.labels;
    write_manifest(o.out + ".manifest.json", "export-dot", std::move(inputs),
                   nlohmann::ordered_json::object(), {fs::path(o.out).filename().string()});
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOpts {
    std::string out;
    std::size_t domains = 100;
    std::size_t pages_min = 1;
    std::size_t pages_max = 3;
    std::size_t attach_k = 2;
    std::size_t boost = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> cliques;    // F or F:PAGES
    std::vector<std::string> bipartites; // HUBS:AUTHORITIES
};

std::size_t parse_count(const std::string& text, const std::string& flag) {
    try {
        std::size_t pos = 0;
        unsigned long long n = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw InvalidInputError("bad " + flag + " value: " + text);
    }
}

FarmSpec parse_clique(const std::string& text) {
    FarmSpec f;
    f.type = FarmType::Clique;
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        f.domains = parse_count(text, "--clique");
        f.pages_per_domain = 1;
    } else {
        f.domains = parse_count(text.substr(0, colon), "--clique");
        f.pages_per_domain = parse_count(text.substr(colon + 1), "--clique");
    }
    return f;
}

FarmSpec parse_bipartite(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw InvalidInputError("bad --bipartite value (want HUBS:AUTHORITIES): " + text);
    FarmSpec f;
    f.type = FarmType::Bipartite;
    f.hubs = parse_count(text.substr(0, colon), "--bipartite");
    f.authorities = parse_count(text.substr(colon + 1), "--bipartite");
    return f;
}

void run_synth(const SynthOpts& o) {
    CorpusSpec spec;
    spec.honest_domains = o.domains;
    spec.pages_min = o.pages_min;
    spec.pages_max = o.pages_max;
    spec.attachment_k = o.attach_k;
    spec.boost_edges = o.boost;
    spec.seed = o.seed;
    for (const auto& text : o.cliques) spec.farms.push_back(parse_clique(text));
    for (const auto& text : o.bipartites) spec.farms.push_back(parse_bipartite(text));

    LabeledCorpus corpus = generate(spec);

    fs::create_directories(o.out);
    std::ostringstream buf;
    save_edge_list(corpus.graph, buf);
    write_file(fs::path(o.out) / "edges.tsv", buf.str());

    buf.str("");
    save_labels_tsv(buf, corpus.truth);
    write_file(fs::path(o.out) / "labels.tsv", buf.str());

    nlohmann::ordered_json farms = nlohmann::ordered_json::array();
    for (const auto& f : spec.farms) {
        if (f.type == FarmType::Clique) {
            farms.push_back({{"type", "clique"},
                             {"domains", f.domains},
                             {"pages_per_domain", f.pages_per_domain}});
        } else {
            farms.push_back(
                {{"type", "bipartite"}, {"hubs", f.hubs}, {"authorities", f.authorities}});
        }
    }
    write_manifest(fs::path(o.out) / "run_manifest.json", "synth",
                   nlohmann::ordered_json::object(),
                   {{"honest_domains", spec.honest_domains},
                    {"pages_min", spec.pages_min},
                    {"pages_max", spec.pages_max},
                    {"attachment_k", spec.attachment_k},
                    {"farms", farms},
                    {"boost_edges", spec.boost_edges},
                    {"seed", spec.seed}},
                   {"edges.tsv", "labels.tsv", "run_manifest.json"});

    std::size_t spam = 0;
    for (const auto& [domain, label] : corpus.truth) spam += label == Label::Spam;
    std::cout << "pages: " << corpus.graph.node_count() << '\n'
              << "edges: " << corpus.graph.edge_count() << '\n'
              << "domains: " << corpus.clustering.domain_count() << '\n'
              << "spam-domains: " << spam << '\n';
}

} // namespace

// ---------------------------------------------------------------------------
// argument wiring
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"link-spam detection toolkit: ranking, link features, fuzzy "
                 "clustering, farm detection, cost-sensitive classification"};
    app.require_subcommand(1);

    IngestOpts ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "load an edge list and print graph counts");
    ingest->add_option("--edges", ingest_opts.edges, "edge-list TSV")->required();
    ingest->callback([&] { run_ingest(ingest_opts); });

    DetectOpts detect_opts;
    auto* detect = app.add_subcommand("detect", "mark spam domains by IN/OUT traversal overlap");
    detect->add_option("--edges", detect_opts.edges, "edge-list TSV")->required();
    detect->add_option("--out", detect_opts.out, "output directory")->required();
    detect->add_option("--tra-lvl", detect_opts.tra_lvl, "out-traversal depth limit (default 2)");
    detect->add_option("--tv", detect_opts.tv, "intersection threshold (default 3)");
    detect->add_flag("--group", detect_opts.group,
                     "also cluster features and write smoothed labelings");
    detect->add_option("--alpha", detect_opts.alpha, "PageRank jump probability (default 0.15)");
    detect->add_option("--epsilon", detect_opts.epsilon,
                       "convergence tolerance (defaults: 1e-8 ranking, 1e-6 clustering)");
    detect->add_option("--max-iter", detect_opts.max_iter,
                       "iteration cap (defaults: 100 ranking, 300 clustering)");
    detect->add_option("--clusters", detect_opts.clusters, "fuzzy cluster count (default 2)");
    detect->add_option("--fuzzifier", detect_opts.fuzzifier, "fuzzy exponent m (default 2)");
    detect->add_option("--depth", detect_opts.depth, "supporter neighborhood depth (default 3)");
    detect->add_option("--tau-hi", detect_opts.tau_hi,
                       "spam-share above which a cluster pulls to spam (default 0.7)");
    detect->add_option("--tau-lo", detect_opts.tau_lo,
                       "spam-share below which a cluster pulls to nonspam (default 0.3)");
    detect->add_option("--seed", detect_opts.seed, "clustering seed (default 0)");
    detect->callback([&] { run_detect(detect_opts); });

    EvaluateOpts evaluate_opts;
    auto* evaluate = app.add_subcommand("evaluate", "score verdicts against ground-truth labels");
    evaluate->add_option("--verdicts", evaluate_opts.verdicts, "verdicts JSON from detect")
        ->required();
    evaluate->add_option("--labels", evaluate_opts.labels, "ground-truth labels TSV")->required();
    evaluate->add_option("--out", evaluate_opts.out, "output directory (default: CSV to stdout)");
    evaluate->callback([&] { run_evaluate(evaluate_opts); });

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand(
        "sweep", "cross-validated cost-ratio sweep of the decision-tree classifier");
    sweep->add_option("--edges", sweep_opts.edges, "edge-list TSV")->required();
    sweep->add_option("--labels", sweep_opts.labels, "ground-truth labels TSV")->required();
    sweep->add_option("--out", sweep_opts.out, "output directory (default: CSV to stdout)");
    sweep->add_option("--cost-ratios", sweep_opts.cost_ratios,
                      "comma-separated ratios (default 1,10,20,30,50)")
        ->delimiter(',');
    sweep->add_option("--folds", sweep_opts.folds, "cross-validation folds (default 5)");
    sweep->add_option("--seed", sweep_opts.seed, "fold-assignment seed (default 0)");
    sweep->add_option("--alpha", sweep_opts.alpha, "PageRank jump probability (default 0.15)");
    sweep->add_option("--epsilon", sweep_opts.epsilon, "ranking tolerance (default 1e-8)");
    sweep->add_option("--max-iter", sweep_opts.max_iter, "ranking iteration cap (default 100)");
    sweep->add_option("--depth", sweep_opts.depth, "supporter neighborhood depth (default 3)");
    sweep->callback([&] { run_sweep(sweep_opts); });

    ExportDotOpts export_opts;
    auto* export_dot_cmd =
        app.add_subcommand("export-dot", "write the domain graph as Graphviz DOT");
    export_dot_cmd->add_option("--edges", export_opts.edges, "edge-list TSV")->required();
    export_dot_cmd->add_option("--labels", export_opts.labels, "labels TSV for spam styling");
    export_dot_cmd->add_option("--verdicts", export_opts.verdicts,
                               "verdicts JSON for spam styling (wins over --labels)");
    export_dot_cmd->add_option("--out", export_opts.out, "output file (default: stdout)");
    export_dot_cmd->callback([&] { run_export_dot(export_opts); });

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "generate a labeled corpus with planted link farms");
    synth->add_option("--out", synth_opts.out, "output directory")->required();
    synth->add_option("--domains", synth_opts.domains, "honest domain count (default 100)");
    synth->add_option("--pages-min", synth_opts.pages_min, "min pages per honest domain");
    synth->add_option("--pages-max", synth_opts.pages_max, "max pages per honest domain");
    synth->add_option("--attach-k", synth_opts.attach_k,
                      "out-links per new honest domain (default 2)");
    synth->add_option("--clique", synth_opts.cliques,
                      "plant a clique farm: DOMAINS or DOMAINS:PAGES (repeatable)");
    synth->add_option("--bipartite", synth_opts.bipartites,
                      "plant a bipartite farm: HUBS:AUTHORITIES (repeatable)");
    synth->add_option("--boost", synth_opts.boost, "random farm-to-honest boost edges");
    synth->add_option("--seed", synth_opts.seed, "generator seed (default 0)");
    synth->callback([&] { run_synth(synth_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        return fail("usage", e.what());
    } catch (const ParseError& e) {
        return fail("parse", e.what());
    } catch (const NotFoundError& e) {
        return fail("not-found", e.what());
    } catch (const InvalidInputError& e) {
        return fail("invalid", e.what());
    } catch (const CliIoError& e) {
        return fail("io", e.what());
    } catch (const fs::filesystem_error& e) {
        return fail("io", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
