#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "linkspam/error.hpp"
#include "linkspam/matrix.hpp"
#include "linkspam/rng.hpp"

namespace linkspam {

struct FcmConfig {
    std::size_t clusters = 2;
    double fuzzifier = 2.0; // m, strictly > 1
    double epsilon = 1e-6;  // max-abs membership change to call it converged
    std::size_t max_iterations = 300;
    std::uint64_t seed = 0;
};

struct CentersResult {
    Matrix centers; // K x D
    // Clusters whose fuzzy weight hit zero and were re-seeded to a random
    // data point. Normally empty.
    std::vector<std::size_t> reseeded;
};

namespace detail {

inline void validate_fcm(const Matrix& data, const FcmConfig& cfg) {
    if (data.rows() == 0 || data.cols() == 0) {
        throw InvalidInputError("clustering requires non-empty data");
    }
    if (cfg.clusters < 1 || cfg.clusters > data.rows()) {
        throw InvalidInputError("cluster count must be in [1, number of data points]");
    }
    if (!(cfg.fuzzifier > 1.0)) throw InvalidInputError("fuzzifier must be > 1");
    if (!(cfg.epsilon > 0.0)) throw InvalidInputError("epsilon must be > 0");
    if (cfg.max_iterations < 1) throw InvalidInputError("max_iterations must be >= 1");
}

} // namespace detail

// Weighted mean per cluster: center_k = sum_y V_k(y)^m * y / sum_y V_k(y)^m.
// An empty fuzzy cluster (zero weight) is re-seeded to a random data point.
inline CentersResult update_centers(const Matrix& data, const Matrix& memberships, double m,
                                    std::mt19937_64& rng) {
    const std::size_t n = data.rows(), dim = data.cols(), k = memberships.cols();
    CentersResult result;
    result.centers = Matrix(k, dim);
    for (std::size_t c = 0; c < k; ++c) {
        double denom = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            double w = std::pow(memberships(y, c), m);
            denom += w;
            for (std::size_t j = 0; j < dim; ++j) result.centers(c, j) += w * data(y, j);
        }
        if (denom > 0.0) {
            for (std::size_t j = 0; j < dim; ++j) result.centers(c, j) /= denom;
        } else {
            std::size_t pick = uniform_index(rng, n);
            for (std::size_t j = 0; j < dim; ++j) result.centers(c, j) = data(pick, j);
            result.reseeded.push_back(c);
        }
    }
    return result;
}

// Membership update in ratio form: V_k(y) = 1 / sum_j (d_k/d_j)^(2/(m-1)).
// A point sitting exactly on one or more centroids splits its membership
// evenly over those and gets 0 elsewhere.
inline Matrix update_memberships(const Matrix& data, const Matrix& centers, double m) {
    const std::size_t n = data.rows(), k = centers.rows();
    const double power = 2.0 / (m - 1.0);
    Matrix memberships(n, k);
    std::vector<double> dist(k);
    for (std::size_t y = 0; y < n; ++y) {
        std::size_t coinciding = 0;
        for (std::size_t c = 0; c < k; ++c) {
            dist[c] = std::sqrt(squared_distance(data.row(y), centers.row(c)));
            if (dist[c] == 0.0) ++coinciding;
        }
        if (coinciding > 0) {
            for (std::size_t c = 0; c < k; ++c) {
                memberships(y, c) = dist[c] == 0.0 ? 1.0 / static_cast<double>(coinciding) : 0.0;
            }
            continue;
        }
        for (std::size_t c = 0; c < k; ++c) {
            double sum = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                sum += std::pow(dist[c] / dist[j], power);
            }
            memberships(y, c) = 1.0 / sum;
        }
    }
    return memberships;
}

// Intra-cluster objective J = sum_y sum_k V_k(y)^m * d(center_k, y)^2.
inline double fcm_objective(const Matrix& data, const Matrix& centers,
                            const Matrix& memberships, double m) {
    double j = 0.0;
    for (std::size_t y = 0; y < data.rows(); ++y) {
        for (std::size_t c = 0; c < centers.rows(); ++c) {
            j += std::pow(memberships(y, c), m) * squared_distance(data.row(y), centers.row(c));
        }
    }
    return j;
}

struct FcmResult {
    Matrix centers;             // K x D
    Matrix memberships;         // N x K, rows sum to 1
    std::size_t iterations = 0; // full center+membership sweeps performed
    bool converged = false;
    std::vector<double> objective; // J after each full sweep
    std::size_t reseed_events = 0;
};

// Called after every full sweep with (iteration index starting at 1,
// centers, memberships, objective).
using FcmObserver = std::function<void(std::size_t, const Matrix&, const Matrix&, double)>;

// Alternating optimization from a seeded random membership matrix: centers
// from memberships, memberships from centers, until the largest entrywise
// membership change drops to epsilon or the iteration budget runs out.
inline FcmResult fcm_fit(const Matrix& data, const FcmConfig& cfg,
                         const FcmObserver& observer = {}) {
    detail::validate_fcm(data, cfg);
    const std::size_t n = data.rows(), k = cfg.clusters;
    std::mt19937_64 rng(cfg.seed);

    Matrix memberships(n, k);
    for (std::size_t y = 0; y < n; ++y) {
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            memberships(y, c) = uniform_unit(rng);
            sum += memberships(y, c);
        }
        if (sum == 0.0) {
            for (std::size_t c = 0; c < k; ++c) memberships(y, c) = 1.0 / static_cast<double>(k);
        } else {
            for (std::size_t c = 0; c < k; ++c) memberships(y, c) /= sum;
        }
    }

    FcmResult result;
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        auto centers = update_centers(data, memberships, cfg.fuzzifier, rng);
        result.reseed_events += centers.reseeded.size();
        Matrix next = update_memberships(data, centers.centers, cfg.fuzzifier);

        double delta = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t c = 0; c < k; ++c) {
                delta = std::max(delta, std::abs(next(y, c) - memberships(y, c)));
            }
        }
        memberships = std::move(next);
        result.centers = std::move(centers.centers);
        result.iterations = it;
        double j = fcm_objective(data, result.centers, memberships, cfg.fuzzifier);
        result.objective.push_back(j);
        if (observer) observer(it, result.centers, memberships, j);
        if (delta <= cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.memberships = std::move(memberships);
    return result;
}

// Z-score each column in place of the original scale. Constant columns map
// to all zeros rather than dividing by zero.
inline Matrix standardize_columns(const Matrix& data) {
    const std::size_t n = data.rows(), dim = data.cols();
    Matrix out(n, dim);
    if (n == 0) return out;
    for (std::size_t j = 0; j < dim; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = data(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        double sd = std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = sd > 0.0 ? (data(i, j) - mean) / sd : 0.0;
        }
    }
    return out;
}

} // namespace linkspam
