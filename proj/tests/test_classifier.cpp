#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "linkspam/classifier.hpp"
#include "linkspam/rng.hpp"

using linkspam::ConfusionMatrix;
using linkspam::CostTree;
using linkspam::Label;
using linkspam::Matrix;
using linkspam::TrainConfig;

namespace {

constexpr Label S = Label::Spam;
constexpr Label N = Label::NonSpam;

Matrix column(const std::vector<double>& xs) {
    Matrix m(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
    return m;
}

// Plain unweighted CART with the same structural conventions (midpoint
// thresholds, min-leaf guard, strict improvement, first-feature tie-break,
// spam on leaf ties), written recursively over plain structs. Reference for
// the cost_ratio=1 case.
struct RefNode {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::unique_ptr<RefNode> left, right;
    Label label = N;
    std::size_t spam = 0, nonspam = 0;
};

double ref_gini(double s, double n) {
    double t = s + n;
    if (t <= 0.0) return 0.0;
    return t * (1.0 - (s / t) * (s / t) - (n / t) * (n / t));
}

std::unique_ptr<RefNode> ref_train(const Matrix& data, const std::vector<Label>& labels,
                                   std::vector<std::size_t> items, std::size_t depth,
                                   std::size_t max_depth, std::size_t min_leaf) {
    auto node = std::make_unique<RefNode>();
    for (std::size_t i : items) (labels[i] == S ? node->spam : node->nonspam)++;

    bool can = depth < max_depth && items.size() >= 2 * min_leaf && node->spam > 0 &&
               node->nonspam > 0;
    if (can) {
        double parent = ref_gini(static_cast<double>(node->spam),
                                 static_cast<double>(node->nonspam));
        double best_cost = parent - 1e-12;
        std::optional<std::pair<std::size_t, double>> best;
        for (std::size_t f = 0; f < data.cols(); ++f) {
            auto sorted = items;
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                return data(a, f) < data(b, f);
            });
            double ls = 0, ln = 0;
            for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
                (labels[sorted[k]] == S ? ls : ln) += 1.0;
                if (data(sorted[k], f) == data(sorted[k + 1], f)) continue;
                std::size_t nl = k + 1, nr = sorted.size() - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                double cost = ref_gini(ls, ln) + ref_gini(static_cast<double>(node->spam) - ls,
                                                          static_cast<double>(node->nonspam) - ln);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = {f, (data(sorted[k], f) + data(sorted[k + 1], f)) / 2.0};
                }
            }
        }
        if (best) {
            std::vector<std::size_t> li, ri;
            for (std::size_t i : items) {
                (data(i, best->first) <= best->second ? li : ri).push_back(i);
            }
            node->leaf = false;
            node->feature = best->first;
            node->threshold = best->second;
            node->left = ref_train(data, labels, li, depth + 1, max_depth, min_leaf);
            node->right = ref_train(data, labels, ri, depth + 1, max_depth, min_leaf);
            return node;
        }
    }
    node->label = node->spam >= node->nonspam ? S : N;
    return node;
}

void check_same_tree(const CostTree& tree, std::size_t id, const RefNode& ref) {
    const auto& n = tree.nodes()[id];
    CHECK(n.leaf == ref.leaf);
    CHECK(n.spam_count == ref.spam);
    CHECK(n.nonspam_count == ref.nonspam);
    if (n.leaf || ref.leaf) {
        CHECK(n.label == ref.label);
        return;
    }
    CHECK(n.feature == ref.feature);
    CHECK(n.threshold == ref.threshold);
    check_same_tree(tree, n.left, *ref.left);
    check_same_tree(tree, n.right, *ref.right);
}

// Transparent rule-by-rule interpreter over the flattened node list.
Label interpret(const std::vector<CostTree::Node>& nodes, std::span<const double> x) {
    std::size_t cur = 0;
    while (true) {
        const auto& n = nodes[cur];
        if (n.leaf) return n.label;
        cur = x[n.feature] <= n.threshold ? n.left : n.right;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

TEST_CASE("metrics reproduce the standard confusion formulas") {
    auto m = linkspam::metrics({.x = 93, .y = 7, .z = 3, .w = 97});
    REQUIRE(m.tpr);
    REQUIRE(m.fpr);
    REQUIRE(m.precision);
    REQUIRE(m.f1);
    CHECK_THAT(*m.tpr, Catch::Matchers::WithinAbs(0.97, 1e-12));
    CHECK_THAT(*m.fpr, Catch::Matchers::WithinAbs(0.07, 1e-12));
    CHECK_THAT(*m.precision, Catch::Matchers::WithinAbs(97.0 / 104.0, 1e-12));
    double p = 97.0 / 104.0, r = 0.97;
    CHECK_THAT(*m.f1, Catch::Matchers::WithinAbs(2.0 * p * r / (p + r), 1e-12));
}

TEST_CASE("a perfect classifier scores tpr 1, fpr 0, f1 1") {
    auto m = linkspam::metrics({.x = 40, .y = 0, .z = 0, .w = 10});
    CHECK(*m.tpr == 1.0);
    CHECK(*m.fpr == 0.0);
    CHECK(*m.precision == 1.0);
    CHECK(*m.f1 == 1.0);
}

TEST_CASE("zero denominators leave fields undefined") {
    auto m = linkspam::metrics({.x = 5, .y = 0, .z = 3, .w = 0});
    REQUIRE(m.tpr);
    CHECK(*m.tpr == 0.0);
    CHECK_FALSE(m.precision); // y + w == 0
    CHECK_FALSE(m.f1);
    REQUIRE(m.fpr);
    CHECK(*m.fpr == 0.0);

    auto no_spam = linkspam::metrics({.x = 5, .y = 1, .z = 0, .w = 0});
    CHECK_FALSE(no_spam.tpr);
    auto no_clean = linkspam::metrics({.x = 0, .y = 0, .z = 2, .w = 2});
    CHECK_FALSE(no_clean.fpr);
    auto empty = linkspam::metrics({});
    CHECK_FALSE(empty.tpr);
    CHECK_FALSE(empty.fpr);
    CHECK_FALSE(empty.precision);
    CHECK_FALSE(empty.f1);
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

TEST_CASE("pure data trains to a single leaf") {
    auto data = column({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0});
    std::vector<Label> labels(10, S);
    auto tree = linkspam::train(data, labels);
    REQUIRE(tree.nodes().size() == 1);
    CHECK(tree.root().leaf);
    CHECK(tree.root().label == S);
    CHECK(tree.root().spam_count == 10);
    CHECK(tree.root().nonspam_count == 0);
}

TEST_CASE("cost ratio swings the weighted majority at a leaf") {
    // identical rows: nothing to split on, so the root stays a leaf
    auto data = column({5.0, 5.0, 5.0, 5.0});
    std::vector<Label> labels = {N, N, N, S};
    TrainConfig cfg{.cost_ratio = 1.0, .max_depth = 8, .min_leaf_size = 1};
    auto even = linkspam::train(data, labels, cfg);
    REQUIRE(even.root().leaf);
    CHECK(even.root().label == N); // 3 > 1

    cfg.cost_ratio = 10.0;
    auto costly = linkspam::train(data, labels, cfg);
    REQUIRE(costly.root().leaf);
    CHECK(costly.root().label == S); // 10 > 3
}

TEST_CASE("the leaf flips exactly at the class-count ratio") {
    // 8 non-spam vs 2 spam, depth 0: flip boundary at ratio 8/2 = 4 (exact
    // in binary). Ties go to spam, so the boundary itself is spam.
    auto data = column({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    std::vector<Label> labels = {N, N, N, N, N, N, N, N, S, S};
    TrainConfig cfg{.cost_ratio = 1.0, .max_depth = 0, .min_leaf_size = 1};

    cfg.cost_ratio = 3.999;
    CHECK(linkspam::train(data, labels, cfg).root().label == N);
    cfg.cost_ratio = 4.0;
    CHECK(linkspam::train(data, labels, cfg).root().label == S);
    cfg.cost_ratio = 4.001;
    CHECK(linkspam::train(data, labels, cfg).root().label == S);

    // same flip law on other power-of-two mixes
    for (auto [ns, s] : std::vector<std::pair<int, int>>{{4, 1}, {16, 2}, {8, 4}}) {
        std::vector<double> xs;
        std::vector<Label> ls;
        for (int i = 0; i < ns; ++i) { xs.push_back(i); ls.push_back(N); }
        for (int i = 0; i < s; ++i) { xs.push_back(100 + i); ls.push_back(S); }
        double boundary = static_cast<double>(ns) / s;
        cfg.cost_ratio = boundary * 0.999;
        CHECK(linkspam::train(column(xs), ls, cfg).root().label == N);
        cfg.cost_ratio = boundary;
        CHECK(linkspam::train(column(xs), ls, cfg).root().label == S);
    }
}

TEST_CASE("ratio 1 training equals plain unweighted Gini training") {
    std::mt19937_64 gen(1234);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix data(60, 3);
        std::vector<Label> labels(60);
        for (std::size_t i = 0; i < 60; ++i) {
            for (std::size_t j = 0; j < 3; ++j) data(i, j) = linkspam::uniform_unit(gen) * 10.0;
            // noisy two-region rule
            bool spam = data(i, 0) + data(i, 1) > 10.0;
            if (linkspam::uniform_unit(gen) < 0.1) spam = !spam;
            labels[i] = spam ? S : N;
        }
        TrainConfig cfg{.cost_ratio = 1.0, .max_depth = 4, .min_leaf_size = 3};
        auto tree = linkspam::train(data, labels, cfg);
        std::vector<std::size_t> all(60);
        for (std::size_t i = 0; i < 60; ++i) all[i] = i;
        auto ref = ref_train(data, labels, all, 0, 4, 3);
        CAPTURE(trial);
        check_same_tree(tree, 0, *ref);
    }
}

TEST_CASE("training respects depth and leaf-size limits") {
    std::mt19937_64 gen(9);
    Matrix data(80, 2);
    std::vector<Label> labels(80);
    for (std::size_t i = 0; i < 80; ++i) {
        data(i, 0) = linkspam::uniform_unit(gen);
        data(i, 1) = linkspam::uniform_unit(gen);
        labels[i] = data(i, 0) > 0.5 ? S : N;
    }
    TrainConfig cfg{.cost_ratio = 1.0, .max_depth = 2, .min_leaf_size = 10};
    auto tree = linkspam::train(data, labels, cfg);

    // walk: depth bound, child sizes, and counts add up
    std::vector<std::pair<std::size_t, std::size_t>> stack = {{0, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const auto& n = tree.nodes()[id];
        CHECK(depth <= 2);
        if (!n.leaf) {
            const auto& l = tree.nodes()[n.left];
            const auto& r = tree.nodes()[n.right];
            CHECK(l.spam_count + l.nonspam_count >= 10);
            CHECK(r.spam_count + r.nonspam_count >= 10);
            CHECK(l.spam_count + r.spam_count == n.spam_count);
            CHECK(l.nonspam_count + r.nonspam_count == n.nonspam_count);
            stack.push_back({n.left, depth + 1});
            stack.push_back({n.right, depth + 1});
        }
    }
}

TEST_CASE("train validates its inputs") {
    CHECK_THROWS_AS(linkspam::train(Matrix(), {}), linkspam::InvalidInputError);
    auto data = column({1.0, 2.0});
    std::vector<Label> labels = {S};
    CHECK_THROWS_AS(linkspam::train(data, labels), linkspam::InvalidInputError);
    std::vector<Label> ok = {S, N};
    CHECK_THROWS_AS(linkspam::train(data, ok, {.cost_ratio = 0.5}), linkspam::InvalidInputError);
    CHECK_THROWS_AS(
        linkspam::train(data, ok, {.cost_ratio = 1.0, .max_depth = 8, .min_leaf_size = 0}),
        linkspam::InvalidInputError);
}

TEST_CASE("training is deterministic") {
    std::mt19937_64 gen(5);
    Matrix data(40, 2);
    std::vector<Label> labels(40);
    for (std::size_t i = 0; i < 40; ++i) {
        data(i, 0) = linkspam::uniform_unit(gen);
        data(i, 1) = linkspam::uniform_unit(gen);
        labels[i] = (i % 3 == 0) ? S : N;
    }
    TrainConfig cfg{.cost_ratio = 10.0, .max_depth = 5, .min_leaf_size = 2};
    auto a = linkspam::train(data, labels, cfg);
    auto b = linkspam::train(data, labels, cfg);
    REQUIRE(a.nodes().size() == b.nodes().size());
    for (std::size_t i = 0; i < a.nodes().size(); ++i) {
        CHECK(a.nodes()[i].leaf == b.nodes()[i].leaf);
        CHECK(a.nodes()[i].feature == b.nodes()[i].feature);
        CHECK(a.nodes()[i].threshold == b.nodes()[i].threshold);
        CHECK(a.nodes()[i].label == b.nodes()[i].label);
    }
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

TEST_CASE("a single-leaf tree predicts its label everywhere") {
    auto data = column({1.0, 2.0, 3.0});
    std::vector<Label> labels = {S, S, S};
    auto tree = linkspam::train(data, labels);
    for (double v : {-100.0, 0.0, 55.5}) {
        std::vector<double> x = {v};
        CHECK(linkspam::predict(tree, x) == S);
    }
}

TEST_CASE("depth-1 descent follows the documented rule") {
    std::vector<CostTree::Node> nodes(3);
    nodes[0] = {.leaf = false, .feature = 0, .threshold = 5.0, .left = 1, .right = 2};
    nodes[1] = {.leaf = true, .label = N, .nonspam_count = 5};
    nodes[2] = {.leaf = true, .label = S, .spam_count = 5};
    CostTree tree(std::move(nodes), 1, {});
    CHECK(linkspam::predict(tree, std::vector<double>{4.0}) == N);
    CHECK(linkspam::predict(tree, std::vector<double>{5.0}) == N); // <= goes left
    CHECK(linkspam::predict(tree, std::vector<double>{5.1}) == S);
    CHECK_THROWS_AS(linkspam::predict(tree, std::vector<double>{1.0, 2.0}),
                    linkspam::InvalidInputError);
}

TEST_CASE("predict agrees with a transparent interpreter on random vectors") {
    std::mt19937_64 gen(77);
    Matrix data(100, 4);
    std::vector<Label> labels(100);
    for (std::size_t i = 0; i < 100; ++i) {
        for (std::size_t j = 0; j < 4; ++j) data(i, j) = linkspam::uniform_unit(gen) * 6.0;
        labels[i] = data(i, 2) < 2.0 || data(i, 0) > 4.5 ? S : N;
    }
    auto tree =
        linkspam::train(data, labels, {.cost_ratio = 1.0, .max_depth = 6, .min_leaf_size = 2});
    CHECK(tree.nodes().size() > 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> x(4);
        for (auto& v : x) v = linkspam::uniform_unit(gen) * 6.0;
        CHECK(linkspam::predict(tree, x) == interpret(tree.nodes(), x));
    }
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

TEST_CASE("evaluate tallies the documented corner cases") {
    std::vector<Label> spam10(10, S);
    auto cm = linkspam::evaluate(spam10, std::span<const Label>(spam10));
    CHECK(cm.x == 0);
    CHECK(cm.y == 0);
    CHECK(cm.z == 0);
    CHECK(cm.w == 10);

    std::vector<Label> wrong(5, S), clean(5, N);
    auto cm2 = linkspam::evaluate(wrong, std::span<const Label>(clean));
    CHECK(cm2.y == 5);
    CHECK(cm2.x + cm2.z + cm2.w == 0);
}

TEST_CASE("evaluate hand tally on a mixed fixture") {
    std::vector<Label> truth = {S, S, N, N, S, N, N, S};
    std::vector<Label> preds = {S, N, N, S, S, S, N, N};
    auto cm = linkspam::evaluate(preds, std::span<const Label>(truth));
    CHECK(cm.x == 2);
    CHECK(cm.y == 2);
    CHECK(cm.z == 2);
    CHECK(cm.w == 2);
    CHECK(cm.total() == 8);
}

TEST_CASE("evaluate skips unknown truth and checks lengths") {
    std::vector<Label> preds = {S, N, S};
    std::vector<std::optional<Label>> truth = {S, std::nullopt, N};
    auto cm = linkspam::evaluate(preds, truth);
    CHECK(cm.total() == 2);
    CHECK(cm.w == 1);
    CHECK(cm.y == 1);

    std::vector<std::optional<Label>> shorter = {S};
    CHECK_THROWS_AS(linkspam::evaluate(preds, shorter), linkspam::InvalidInputError);
}

TEST_CASE("perfect predictions give tpr 1 and fpr 0 through the metrics") {
    std::vector<Label> truth = {S, N, S, N, N, S, N, N};
    auto m = linkspam::metrics(linkspam::evaluate(truth, std::span<const Label>(truth)));
    CHECK(*m.tpr == 1.0);
    CHECK(*m.fpr == 0.0);
}

// ---------------------------------------------------------------------------
// cost_sweep
// ---------------------------------------------------------------------------

TEST_CASE("default ratio list is the documented sweep") {
    CHECK(linkspam::default_cost_ratios() == std::vector<double>{1, 10, 20, 30, 50});
}

TEST_CASE("a separable fixture sweeps to perfect scores at ratio 1") {
    // clean cluster near 0, spam cluster near 10; separable by any midpoint
    Matrix data(8, 1);
    std::vector<Label> labels(8);
    for (std::size_t i = 0; i < 4; ++i) {
        data(i, 0) = static_cast<double>(i) * 0.25;
        labels[i] = N;
        data(4 + i, 0) = 10.0 + static_cast<double>(i) * 0.25;
        labels[4 + i] = S;
    }
    auto rows = linkspam::cost_sweep(data, labels, {1.0}, 2, 3,
                                     {.cost_ratio = 1.0, .max_depth = 3, .min_leaf_size = 1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].confusion.total() == 8);
    REQUIRE(rows[0].scores.tpr);
    REQUIRE(rows[0].scores.fpr);
    CHECK(*rows[0].scores.tpr == 1.0);
    CHECK(*rows[0].scores.fpr == 0.0);
}

TEST_CASE("sweep emits one row per ratio in the requested order") {
    std::mt19937_64 gen(2);
    Matrix data(30, 2);
    std::vector<Label> labels(30);
    for (std::size_t i = 0; i < 30; ++i) {
        data(i, 0) = linkspam::uniform_unit(gen);
        data(i, 1) = linkspam::uniform_unit(gen);
        labels[i] = i % 4 == 0 ? S : N;
    }
    std::vector<double> ratios = {5.0, 1.0, 30.0};
    auto rows = linkspam::cost_sweep(data, labels, ratios, 3, 11);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].cost_ratio == ratios[i]);
        CHECK(rows[i].confusion.total() == 30);
    }
}

TEST_CASE("sweep folds are seed-deterministic") {
    std::mt19937_64 gen(8);
    Matrix data(24, 2);
    std::vector<Label> labels(24);
    for (std::size_t i = 0; i < 24; ++i) {
        data(i, 0) = linkspam::uniform_unit(gen) * 3.0;
        data(i, 1) = linkspam::uniform_unit(gen) * 3.0;
        labels[i] = data(i, 0) > 1.5 ? S : N;
    }
    auto a = linkspam::cost_sweep(data, labels, {1.0, 10.0}, 4, 99);
    auto b = linkspam::cost_sweep(data, labels, {1.0, 10.0}, 4, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].confusion.x == b[i].confusion.x);
        CHECK(a[i].confusion.y == b[i].confusion.y);
        CHECK(a[i].confusion.z == b[i].confusion.z);
        CHECK(a[i].confusion.w == b[i].confusion.w);
    }
}

TEST_CASE("sweep validates folds, sizes, and ratios") {
    auto data = column({1.0, 2.0, 3.0});
    std::vector<Label> labels = {S, N, S};
    CHECK_THROWS_AS(linkspam::cost_sweep(data, labels, {1.0}, 1, 0),
                    linkspam::InvalidInputError);
    CHECK_THROWS_AS(linkspam::cost_sweep(data, labels, {1.0}, 4, 0),
                    linkspam::InvalidInputError);
    CHECK_THROWS_AS(linkspam::cost_sweep(data, labels, {}, 2, 0), linkspam::InvalidInputError);
}
