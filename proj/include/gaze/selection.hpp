#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <json.hpp>

#include "gaze/clustering.hpp"
#include "gaze/indices.hpp"

// =============================================================================
// FILE: gaze/selection.hpp
// BRIEF: Exhaustive hyperparameter grid search per algorithm, selecting the
//        candidate with the highest silhouette coefficient. Candidates that
//        produce fewer than 2 non-noise clusters, leave more than half the
//        points as noise, or fail outright are inadmissible. SC is computed
//        on non-noise points only. Ties break toward the earlier candidate.
// =============================================================================

namespace gaze::selection {

struct GridSpec {
    cluster::Algorithm algorithm = cluster::Algorithm::KMeans;
    std::vector<std::size_t> ks;
    std::vector<double> epses;
    std::vector<std::size_t> min_ptss;
    std::vector<double> xis;
    std::vector<double> thresholds;
    cluster::HyperParams base;  // seed / max_iter / tol / branching shared by candidates

    /// Candidate parameter set in deterministic grid order.
    std::vector<cluster::HyperParams> candidates() const {
        std::vector<cluster::HyperParams> out;
        auto with = [&](auto&& fill) {
            cluster::HyperParams p = base;
            fill(p);
            out.push_back(p);
        };
        switch (algorithm) {
            case cluster::Algorithm::KMeans:
            case cluster::Algorithm::KMedoids:
            case cluster::Algorithm::AC:
            case cluster::Algorithm::GMM:
                for (std::size_t k : ks) with([&](auto& p) { p.k = k; });
                break;
            case cluster::Algorithm::BIRCH:
                for (double t : thresholds) {
                    for (std::size_t k : ks) {
                        with([&](auto& p) {
                            p.threshold = t;
                            p.k = k;
                        });
                    }
                }
                break;
            case cluster::Algorithm::DBSCAN:
                for (std::size_t m : min_ptss) {
                    for (double e : epses) {
                        with([&](auto& p) {
                            p.min_pts = m;
                            p.eps = e;
                        });
                    }
                }
                break;
            case cluster::Algorithm::OPTICS:
                for (std::size_t m : min_ptss) {
                    for (double x : xis) {
                        with([&](auto& p) {
                            p.min_pts = m;
                            p.xi = x;
                        });
                    }
                }
                break;
        }
        return out;
    }
};

struct SelectionResult {
    cluster::ClusterAssignment best;
    double best_sc = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_candidates_evaluated = 0;
    bool degenerate = true;
};

inline constexpr double kMaxNoiseFraction = 0.5;

inline SelectionResult grid_search(const std::vector<Point>& points, const GridSpec& spec) {
    const std::vector<cluster::HyperParams> candidates = spec.candidates();
    if (candidates.empty()) throw ConfigError("empty grid for " + to_string(spec.algorithm));

    SelectionResult result;
    result.best.algorithm = spec.algorithm;
    result.best.params = spec.base;
    result.best.labels.assign(points.size(), -1);
    result.best.k = 0;

    for (const cluster::HyperParams& params : candidates) {
        ++result.n_candidates_evaluated;
        cluster::ClusterAssignment a;
        try {
            a = cluster::run(spec.algorithm, points, params);
        } catch (const Error&) {
            continue;  // e.g. k > n or too few subclusters: inadmissible
        }
        if (a.k < 2) continue;
        if (a.noise_fraction() > kMaxNoiseFraction) continue;
        const indices::Value sc = indices::silhouette(points, a.labels);
        if (!sc) continue;
        if (result.degenerate || *sc > result.best_sc) {
            result.best = std::move(a);
            result.best_sc = *sc;
            result.degenerate = false;
        }
    }
    return result;
}

// ----------------------------------------------------------------------------
// Default grids. Cluster-count grids run k in 2..10; DBSCAN eps candidates are
// deciles of the 4-NN distance distribution; BIRCH thresholds are quartiles of
// a pairwise-distance sample. Data-driven candidates adapt to stimulus scale.
// ----------------------------------------------------------------------------

inline std::vector<double> knn_distances(const std::vector<Point>& points, std::size_t kth) {
    const std::size_t n = points.size();
    std::vector<double> out;
    out.reserve(n);
    std::vector<double> row;
    for (std::size_t i = 0; i < n; ++i) {
        row.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) row.push_back(dist(points[i], points[j]));
        }
        if (row.size() < kth) continue;
        std::nth_element(row.begin(), row.begin() + (kth - 1), row.end());
        out.push_back(row[kth - 1]);
    }
    return out;
}

inline GridSpec default_grid(cluster::Algorithm algorithm, const std::vector<Point>& points,
                             std::uint64_t seed) {
    GridSpec spec;
    spec.algorithm = algorithm;
    spec.base.seed = seed;

    const std::size_t n = points.size();
    for (std::size_t k = 2; k <= 10 && k <= n; ++k) spec.ks.push_back(k);

    switch (algorithm) {
        case cluster::Algorithm::DBSCAN: {
            const std::vector<double> d4 = knn_distances(points, 4);
            for (int decile = 1; decile <= 9 && !d4.empty(); ++decile) {
                const double e = quantile(d4, 0.1 * decile);
                if (e > 0.0 && (spec.epses.empty() || e != spec.epses.back())) {
                    spec.epses.push_back(e);
                }
            }
            if (spec.epses.empty()) spec.epses.push_back(1.0);
            spec.min_ptss = {4, 8, 12};
            break;
        }
        case cluster::Algorithm::OPTICS:
            spec.min_ptss = {4, 8, 12};
            spec.xis = {0.02, 0.05, 0.1};
            break;
        case cluster::Algorithm::BIRCH: {
            // Pairwise-distance sample: exhaustive for small trials, seeded
            // random pairs beyond that.
            std::vector<double> sample;
            if (n <= 400) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) sample.push_back(dist(points[i], points[j]));
                }
            } else {
                Rng rng(derive_seed(seed, 0xB12C4ULL));
                for (int s = 0; s < 20000; ++s) {
                    const std::size_t i = rng.uniform_index(n);
                    const std::size_t j = rng.uniform_index(n);
                    if (i != j) sample.push_back(dist(points[i], points[j]));
                }
            }
            for (double q : {0.25, 0.5, 0.75}) {
                if (sample.empty()) break;
                const double t = quantile(sample, q);
                if (t > 0.0 && (spec.thresholds.empty() || t != spec.thresholds.back())) {
                    spec.thresholds.push_back(t);
                }
            }
            if (spec.thresholds.empty()) spec.thresholds.push_back(1.0);
            spec.base.branching = 50;
            break;
        }
        default: break;
    }
    return spec;
}

inline nlohmann::json to_json(const SelectionResult& r) {
    nlohmann::json j;
    j["assignment"] = cluster::to_json(r.best);
    j["best_sc"] = r.degenerate ? nlohmann::json(nullptr) : nlohmann::json(r.best_sc);
    j["n_candidates_evaluated"] = r.n_candidates_evaluated;
    j["degenerate"] = r.degenerate;
    return j;
}

}  // namespace gaze::selection
