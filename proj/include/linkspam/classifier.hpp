#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/label.hpp"
#include "linkspam/matrix.hpp"
#include "linkspam/rng.hpp"

namespace linkspam {

// Orientation: x = clean kept clean, y = clean flagged, z = spam missed,
// w = spam caught.
struct ConfusionMatrix {
    std::size_t x = 0; // true non-spam, predicted non-spam
    std::size_t y = 0; // true non-spam, predicted spam
    std::size_t z = 0; // true spam, predicted non-spam
    std::size_t w = 0; // true spam, predicted spam

    std::size_t total() const noexcept { return x + y + z + w; }
};

// Rates from the confusion cells; a field whose denominator is zero is
// left unset rather than forced to 0 or 1.
struct Metrics {
    std::optional<double> tpr;
    std::optional<double> fpr;
    std::optional<double> precision;
    std::optional<double> f1;
};

inline Metrics metrics(const ConfusionMatrix& cm) {
    Metrics m;
    auto x = static_cast<double>(cm.x), y = static_cast<double>(cm.y);
    auto z = static_cast<double>(cm.z), w = static_cast<double>(cm.w);
    if (cm.z + cm.w > 0) m.tpr = w / (z + w);
    if (cm.y + cm.x > 0) m.fpr = y / (y + x);
    if (cm.y + cm.w > 0) m.precision = w / (y + w);
    if (m.tpr && m.precision && *m.tpr + *m.precision > 0.0) {
        m.f1 = 2.0 * *m.precision * *m.tpr / (*m.precision + *m.tpr);
    }
    return m;
}

struct TrainConfig {
    double cost_ratio = 1.0; // weight on each spam instance, >= 1
    std::size_t max_depth = 8;
    std::size_t min_leaf_size = 5;
};

// Greedy binary decision tree with instance weighting: spam instances weigh
// cost_ratio, non-spam weigh 1, and splits minimize the weighted Gini
// impurity. Nodes live in a flat array; children are indices.
class CostTree {
public:
    struct Node {
        bool leaf = true;
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        Label label = Label::NonSpam;
        std::size_t spam_count = 0;
        std::size_t nonspam_count = 0;
    };

    CostTree(std::vector<Node> nodes, std::size_t dimension, TrainConfig config)
        : nodes_(std::move(nodes)), dimension_(dimension), config_(config) {}

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& root() const { return nodes_.front(); }
    std::size_t dimension() const noexcept { return dimension_; }
    const TrainConfig& config() const noexcept { return config_; }

private:
    std::vector<Node> nodes_;
    std::size_t dimension_;
    TrainConfig config_;
};

namespace detail {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double cost = std::numeric_limits<double>::infinity();
};

// Weight-scaled Gini impurity: W * (1 - ps^2 - pn^2) with ps, pn the weight
// shares. Scaling by W makes child costs addable.
inline double scaled_gini(double spam_weight, double nonspam_weight) {
    double total = spam_weight + nonspam_weight;
    if (total <= 0.0) return 0.0;
    double ps = spam_weight / total, pn = nonspam_weight / total;
    return total * (1.0 - ps * ps - pn * pn);
}

struct TreeBuilder {
    const Matrix& data;
    std::span<const Label> labels;
    TrainConfig cfg;
    std::vector<CostTree::Node> nodes;

    double weight_of(std::size_t i) const {
        return labels[i] == Label::Spam ? cfg.cost_ratio : 1.0;
    }

    SplitChoice best_split(const std::vector<std::size_t>& items) const {
        SplitChoice best;
        double spam_total = 0.0, nonspam_total = 0.0;
        for (std::size_t i : items) {
            (labels[i] == Label::Spam ? spam_total : nonspam_total) += weight_of(i);
        }
        const double parent_cost = scaled_gini(spam_total, nonspam_total);

        std::vector<std::pair<double, std::size_t>> order(items.size());
        for (std::size_t f = 0; f < data.cols(); ++f) {
            for (std::size_t k = 0; k < items.size(); ++k) {
                order[k] = {data(items[k], f), items[k]};
            }
            std::sort(order.begin(), order.end());
            double left_spam = 0.0, left_nonspam = 0.0;
            std::size_t left_n = 0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                std::size_t i = order[k].second;
                (labels[i] == Label::Spam ? left_spam : left_nonspam) += weight_of(i);
                ++left_n;
                if (order[k].first == order[k + 1].first) continue; // not a boundary
                if (left_n < cfg.min_leaf_size || items.size() - left_n < cfg.min_leaf_size) {
                    continue;
                }
                double cost = scaled_gini(left_spam, left_nonspam) +
                              scaled_gini(spam_total - left_spam, nonspam_total - left_nonspam);
                if (cost < best.cost && cost < parent_cost - 1e-12) {
                    best = {true, f, (order[k].first + order[k + 1].first) / 2.0, cost};
                }
            }
        }
        return best;
    }

    std::size_t build(const std::vector<std::size_t>& items, std::size_t depth) {
        std::size_t spam_n = 0;
        for (std::size_t i : items) spam_n += labels[i] == Label::Spam ? 1 : 0;
        std::size_t nonspam_n = items.size() - spam_n;

        std::size_t id = nodes.size();
        nodes.emplace_back();
        nodes[id].spam_count = spam_n;
        nodes[id].nonspam_count = nonspam_n;

        bool pure = spam_n == 0 || nonspam_n == 0;
        bool splittable = depth < cfg.max_depth && items.size() >= 2 * cfg.min_leaf_size && !pure;
        if (splittable) {
            auto split = best_split(items);
            if (split.found) {
                std::vector<std::size_t> left_items, right_items;
                for (std::size_t i : items) {
                    (data(i, split.feature) <= split.threshold ? left_items : right_items)
                        .push_back(i);
                }
                std::size_t left = build(left_items, depth + 1);
                std::size_t right = build(right_items, depth + 1);
                nodes[id].leaf = false;
                nodes[id].feature = split.feature;
                nodes[id].threshold = split.threshold;
                nodes[id].left = left;
                nodes[id].right = right;
                return id;
            }
        }
        double spam_weight = static_cast<double>(spam_n) * cfg.cost_ratio;
        nodes[id].label =
            spam_weight >= static_cast<double>(nonspam_n) ? Label::Spam : Label::NonSpam;
        return id;
    }
};

} // namespace detail

inline CostTree train(const Matrix& features, std::span<const Label> labels,
                      const TrainConfig& cfg = {}) {
    if (features.rows() == 0) throw InvalidInputError("training data is empty");
    if (features.rows() != labels.size()) {
        throw InvalidInputError("label count does not match the data");
    }
    if (cfg.cost_ratio < 1.0) throw InvalidInputError("cost_ratio must be >= 1");
    if (cfg.min_leaf_size < 1) throw InvalidInputError("min_leaf_size must be >= 1");
    detail::TreeBuilder builder{features, labels, cfg, {}};
    std::vector<std::size_t> all(features.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    builder.build(all, 0);
    return CostTree(std::move(builder.nodes), features.cols(), cfg);
}

inline Label predict(const CostTree& tree, std::span<const double> x) {
    if (x.size() != tree.dimension()) {
        throw InvalidInputError("feature vector dimension does not match the tree");
    }
    const auto& nodes = tree.nodes();
    std::size_t cur = 0;
    while (!nodes[cur].leaf) {
        cur = x[nodes[cur].feature] <= nodes[cur].threshold ? nodes[cur].left : nodes[cur].right;
    }
    return nodes[cur].label;
}

// Tally predictions against (possibly partial) ground truth; unknown truth
// rows are skipped.
inline ConfusionMatrix evaluate(std::span<const Label> predictions,
                                std::span<const std::optional<Label>> truth) {
    if (predictions.size() != truth.size()) {
        throw InvalidInputError("prediction and truth lengths differ");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (!truth[i]) continue;
        if (*truth[i] == Label::NonSpam) {
            (predictions[i] == Label::NonSpam ? cm.x : cm.y)++;
        } else {
            (predictions[i] == Label::NonSpam ? cm.z : cm.w)++;
        }
    }
    return cm;
}

inline ConfusionMatrix evaluate(std::span<const Label> predictions,
                                std::span<const Label> truth) {
    std::vector<std::optional<Label>> known(truth.begin(), truth.end());
    return evaluate(predictions, std::span<const std::optional<Label>>(known));
}

inline const std::vector<double>& default_cost_ratios() {
    static const std::vector<double> ratios = {1.0, 10.0, 20.0, 30.0, 50.0};
    return ratios;
}

struct SweepRow {
    double cost_ratio = 0.0;
    ConfusionMatrix confusion; // summed over the folds
    Metrics scores;
};

// Seeded k-fold cross-validation at each cost ratio: instances are shuffled
// once, dealt round-robin into folds, and every fold takes a turn as the
// held-out set. Confusion counts accumulate across folds per ratio.
inline std::vector<SweepRow> cost_sweep(const Matrix& features, std::span<const Label> labels,
                                        const std::vector<double>& ratios, std::size_t folds,
                                        std::uint64_t seed, const TrainConfig& base = {}) {
    if (folds < 2) throw InvalidInputError("cross-validation needs at least 2 folds");
    if (features.rows() < folds) throw InvalidInputError("fewer instances than folds");
    if (features.rows() != labels.size()) {
        throw InvalidInputError("label count does not match the data");
    }
    if (ratios.empty()) throw InvalidInputError("no cost ratios given");

    std::vector<std::size_t> fold_of(features.rows());
    {
        std::vector<std::size_t> order(features.rows());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::mt19937_64 rng(seed);
        shuffle(order, rng);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            fold_of[order[pos]] = pos % folds;
        }
    }

    std::vector<SweepRow> rows;
    for (double ratio : ratios) {
        TrainConfig cfg = base;
        cfg.cost_ratio = ratio;
        SweepRow row;
        row.cost_ratio = ratio;
        for (std::size_t f = 0; f < folds; ++f) {
            std::vector<std::size_t> train_idx, test_idx;
            for (std::size_t i = 0; i < features.rows(); ++i) {
                (fold_of[i] == f ? test_idx : train_idx).push_back(i);
            }
            Matrix train_data(train_idx.size(), features.cols());
            std::vector<Label> train_labels(train_idx.size());
            for (std::size_t k = 0; k < train_idx.size(); ++k) {
                for (std::size_t j = 0; j < features.cols(); ++j) {
                    train_data(k, j) = features(train_idx[k], j);
                }
                train_labels[k] = labels[train_idx[k]];
            }
            auto tree = train(train_data, train_labels, cfg);
            for (std::size_t i : test_idx) {
                Label got = predict(tree, features.row(i));
                if (labels[i] == Label::NonSpam) {
                    (got == Label::NonSpam ? row.confusion.x : row.confusion.y)++;
                } else {
                    (got == Label::NonSpam ? row.confusion.z : row.confusion.w)++;
                }
            }
        }
        row.scores = metrics(row.confusion);
        rows.push_back(row);
    }
    return rows;
}

} // namespace linkspam
