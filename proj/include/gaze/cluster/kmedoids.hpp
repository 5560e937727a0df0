#pragma once

#include <limits>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/kmedoids.hpp
// BRIEF: PAM k-medoids: greedy BUILD then best-improvement SWAP until no swap
//        lowers the total point-to-medoid distance. Medoids are input points.
// =============================================================================

namespace gaze::cluster {

namespace detail {

class DistMatrix {
public:
    explicit DistMatrix(const std::vector<Point>& pts) : n_(pts.size()), d_(n_ * n_, 0.0) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                const double d = dist(pts[i], pts[j]);
                d_[i * n_ + j] = d;
                d_[j * n_ + i] = d;
            }
        }
    }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

}  // namespace detail

inline ClusterAssignment kmedoids(const std::vector<Point>& points, std::size_t k,
                                  std::uint64_t seed = 0, std::size_t max_iter = 300) {
    const std::size_t n = points.size();
    HyperParams params;
    params.k = k;
    params.seed = seed;
    params.max_iter = max_iter;
    params.validate(Algorithm::KMedoids);
    if (n < k) throw DataError("insufficient points: " + std::to_string(n) + " < k=" + std::to_string(k));

    const detail::DistMatrix D(points);

    // BUILD: first medoid minimizes total distance, the rest greedily maximize
    // the cost reduction. Ties break toward the lower index.
    std::vector<std::size_t> medoids;
    std::vector<bool> is_medoid(n, false);
    {
        std::size_t best = 0;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < n; ++i) c += D(i, j);
            if (c < best_cost) {
                best_cost = c;
                best = j;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = true;
    }
    std::vector<double> nearest(n);  // distance to the closest medoid
    for (std::size_t i = 0; i < n; ++i) nearest[i] = D(i, medoids[0]);
    while (medoids.size() < k) {
        std::size_t best = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double delta = nearest[i] - D(i, c);
                if (delta > 0.0) gain += delta;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = true;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], D(i, best));
    }

    // SWAP: apply the single best-improving (medoid, candidate) swap per pass.
    auto refresh = [&](std::vector<double>& d1, std::vector<double>& d2, std::vector<std::size_t>& who) {
        for (std::size_t i = 0; i < n; ++i) {
            double b1 = std::numeric_limits<double>::infinity();
            double b2 = std::numeric_limits<double>::infinity();
            std::size_t w = 0;
            for (std::size_t m = 0; m < medoids.size(); ++m) {
                const double d = D(i, medoids[m]);
                if (d < b1) {
                    b2 = b1;
                    b1 = d;
                    w = m;
                } else if (d < b2) {
                    b2 = d;
                }
            }
            d1[i] = b1;
            d2[i] = b2;
            who[i] = w;
        }
    };

    std::vector<double> d1(n), d2(n);
    std::vector<std::size_t> who(n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        refresh(d1, d2, who);
        double best_delta = -1e-12;
        std::size_t best_m = k, best_h = n;
        for (std::size_t m = 0; m < k; ++m) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                double delta = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dih = D(i, h);
                    if (who[i] == m) {
                        delta += std::min(dih, d2[i]) - d1[i];
                    } else if (dih < d1[i]) {
                        delta += dih - d1[i];
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_m = m;
                    best_h = h;
                }
            }
        }
        if (best_m == k) break;
        is_medoid[medoids[best_m]] = false;
        medoids[best_m] = best_h;
        is_medoid[best_h] = true;
    }

    ClusterAssignment out;
    out.algorithm = Algorithm::KMedoids;
    out.params = params;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < k; ++m) {
            const double d = D(i, medoids[m]);
            if (d < best) {
                best = d;
                w = m;
            }
        }
        out.labels[i] = static_cast<int>(w);
    }
    canonicalize_labels(out.labels, out.k);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

/// Total point-to-nearest-medoid distance of a medoid index set; exposed for
/// cost assertions.
inline double kmedoids_cost(const std::vector<Point>& points, const std::vector<std::size_t>& medoids) {
    double c = 0.0;
    for (const Point& p : points) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m : medoids) best = std::min(best, dist(p, points[m]));
        c += best;
    }
    return c;
}

}  // namespace gaze::cluster
