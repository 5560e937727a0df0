#pragma once

#include <limits>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/kmeans.hpp
// BRIEF: Lloyd iteration from k-means++ seeding. Nearest-centroid ties break
//        toward the lower cluster index; within-cluster sum of squares is
//        non-increasing across iterations.
// =============================================================================

namespace gaze::cluster {

namespace detail {

inline std::vector<Point> kmeanspp_init(const std::vector<Point>& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Point> centers;
    centers.reserve(k);
    std::vector<bool> chosen(n, false);

    std::size_t first = rng.uniform_index(n);
    centers.push_back(points[first]);
    chosen[first] = true;

    std::vector<double> d2(n);
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& c : centers) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = n - 1;  // float round-off on the last bin
        } else {
            // All remaining mass is zero (duplicate-heavy input): take the
            // first point not yet chosen so we still return k centers.
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = 0;
        }
        chosen[pick] = true;
        centers.push_back(points[pick]);
    }
    return centers;
}

/// Nearest center by squared distance, ties toward the lower index.
inline std::size_t nearest_center(const Point& p, const std::vector<Point>& centers) {
    std::size_t best = 0;
    double best_d = sq_dist(p, centers[0]);
    for (std::size_t j = 1; j < centers.size(); ++j) {
        const double d = sq_dist(p, centers[j]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

}  // namespace detail

/// `wcss_trace`, when given, receives the within-cluster sum of squares after
/// every assignment step.
inline ClusterAssignment kmeans(const std::vector<Point>& points, std::size_t k,
                                std::uint64_t seed = 0, std::size_t max_iter = 300,
                                double tol = 1e-6, std::vector<double>* wcss_trace = nullptr) {
    const std::size_t n = points.size();
    HyperParams params;
    params.k = k;
    params.seed = seed;
    params.max_iter = max_iter;
    params.tol = tol;
    params.validate(Algorithm::KMeans);
    if (n < k) throw DataError("insufficient points: " + std::to_string(n) + " < k=" + std::to_string(k));

    Rng rng(seed);
    std::vector<Point> centers = detail::kmeanspp_init(points, k, rng);
    std::vector<int> labels(n, 0);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double wcss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = detail::nearest_center(points[i], centers);
            labels[i] = static_cast<int>(j);
            wcss += sq_dist(points[i], centers[j]);
        }
        if (wcss_trace) wcss_trace->push_back(wcss);

        std::vector<Point> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[labels[i]].x += points[i].x;
            sums[labels[i]].y += points[i].y;
            ++counts[labels[i]];
        }
        // Empty clusters steal the point farthest from its center.
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] > 0) continue;
            std::size_t worst = n;
            double worst_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[labels[i]] <= 1) continue;
                const double d = sq_dist(points[i], centers[labels[i]]);
                if (d > worst_d) {
                    worst_d = d;
                    worst = i;
                }
            }
            if (worst == n) continue;
            const int old = labels[worst];
            sums[old].x -= points[worst].x;
            sums[old].y -= points[worst].y;
            --counts[old];
            labels[worst] = static_cast<int>(j);
            sums[j] = points[worst];
            counts[j] = 1;
        }

        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) continue;
            const Point next{sums[j].x / counts[j], sums[j].y / counts[j]};
            shift = std::max(shift, dist(centers[j], next));
            centers[j] = next;
        }
        if (shift < tol) {
            // One last assignment against the settled centers.
            double final_wcss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = detail::nearest_center(points[i], centers);
                labels[i] = static_cast<int>(j);
                final_wcss += sq_dist(points[i], centers[j]);
            }
            if (wcss_trace) wcss_trace->push_back(final_wcss);
            break;
        }
    }

    ClusterAssignment out;
    out.algorithm = Algorithm::KMeans;
    out.params = params;
    out.labels = std::move(labels);
    canonicalize_labels(out.labels, out.k);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
