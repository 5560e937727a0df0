#pragma once

#include <limits>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/cluster/kmeans.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/gmm.hpp
// BRIEF: Gaussian mixture fit by EM with full 2x2 covariances, initialized
//        from k-means. Covariance diagonals are floored at 1e-6; the
//        log-likelihood is non-decreasing per iteration. Labels are the
//        argmax responsibility.
// =============================================================================

namespace gaze::cluster {

namespace detail {

struct Gauss2 {
    Point mean;
    double a = 1.0, b = 0.0, c = 1.0;  // covariance [[a,b],[b,c]]

    void regularize() {
        a += 1e-6;
        c += 1e-6;
        if (a * c - b * b <= 0.0) b = 0.0;  // collapse to axis-aligned
    }

    double log_pdf(const Point& p) const {
        const double det = a * c - b * b;
        const double dx = p.x - mean.x;
        const double dy = p.y - mean.y;
        const double quad = (c * dx * dx - 2.0 * b * dx * dy + a * dy * dy) / det;
        return -std::log(2.0 * M_PI) - 0.5 * std::log(det) - 0.5 * quad;
    }
};

}  // namespace detail

inline ClusterAssignment gmm(const std::vector<Point>& points, std::size_t k,
                             std::uint64_t seed = 0, std::size_t max_iter = 200, double tol = 1e-6,
                             std::vector<double>* loglik_trace = nullptr) {
    const std::size_t n = points.size();
    HyperParams params;
    params.k = k;
    params.seed = seed;
    params.max_iter = max_iter;
    params.tol = tol;
    params.validate(Algorithm::GMM);
    if (n < k) throw DataError("insufficient points: " + std::to_string(n) + " < k=" + std::to_string(k));

    // Hard k-means assignment seeds the mixture.
    const ClusterAssignment init = kmeans(points, k, seed, 100, 1e-6);
    std::vector<detail::Gauss2> comp(k);
    std::vector<double> weight(k, 0.0);
    {
        std::vector<std::vector<double>> resp(n, std::vector<double>(k, 0.0));
        for (std::size_t i = 0; i < n; ++i) resp[i][init.labels[i]] = 1.0;
        // M-step on the hard assignment.
        for (std::size_t j = 0; j < k; ++j) {
            double w = 0.0, mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                w += resp[i][j];
                mx += resp[i][j] * points[i].x;
                my += resp[i][j] * points[i].y;
            }
            weight[j] = w / static_cast<double>(n);
            if (w > 0.0) {
                comp[j].mean = {mx / w, my / w};
                double sa = 0.0, sb = 0.0, sc = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dx = points[i].x - comp[j].mean.x;
                    const double dy = points[i].y - comp[j].mean.y;
                    sa += resp[i][j] * dx * dx;
                    sb += resp[i][j] * dx * dy;
                    sc += resp[i][j] * dy * dy;
                }
                comp[j].a = sa / w;
                comp[j].b = sb / w;
                comp[j].c = sc / w;
            }
            comp[j].regularize();
        }
    }

    std::vector<std::vector<double>> log_resp(n, std::vector<double>(k, 0.0));
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // E-step with log-sum-exp stabilization.
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double mx = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < k; ++j) {
                log_resp[i][j] = (weight[j] > 0.0 ? std::log(weight[j]) : -1e300) +
                                 comp[j].log_pdf(points[i]);
                mx = std::max(mx, log_resp[i][j]);
            }
            double sum = 0.0;
            for (std::size_t j = 0; j < k; ++j) sum += std::exp(log_resp[i][j] - mx);
            const double lse = mx + std::log(sum);
            ll += lse;
            for (std::size_t j = 0; j < k; ++j) log_resp[i][j] = std::exp(log_resp[i][j] - lse);
        }
        if (loglik_trace) loglik_trace->push_back(ll);

        // M-step.
        for (std::size_t j = 0; j < k; ++j) {
            double w = 0.0, mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = log_resp[i][j];
                w += r;
                mx += r * points[i].x;
                my += r * points[i].y;
            }
            if (w < 1e-12) {
                weight[j] = 0.0;
                comp[j].regularize();
                continue;
            }
            weight[j] = w / static_cast<double>(n);
            comp[j].mean = {mx / w, my / w};
            double sa = 0.0, sb = 0.0, sc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = log_resp[i][j];
                const double dx = points[i].x - comp[j].mean.x;
                const double dy = points[i].y - comp[j].mean.y;
                sa += r * dx * dx;
                sb += r * dx * dy;
                sc += r * dy * dy;
            }
            comp[j].a = sa / w;
            comp[j].b = sb / w;
            comp[j].c = sc / w;
            comp[j].regularize();
        }

        if (std::abs(ll - prev_ll) < tol) break;
        prev_ll = ll;
    }

    // Refresh responsibilities against the final parameters.
    for (std::size_t i = 0; i < n; ++i) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            log_resp[i][j] =
                (weight[j] > 0.0 ? std::log(weight[j]) : -1e300) + comp[j].log_pdf(points[i]);
            mx = std::max(mx, log_resp[i][j]);
        }
        for (std::size_t j = 0; j < k; ++j) log_resp[i][j] -= mx;
    }

    ClusterAssignment out;
    out.algorithm = Algorithm::GMM;
    out.params = params;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < k; ++j) {
            if (log_resp[i][j] > log_resp[i][best]) best = j;
        }
        out.labels[i] = static_cast<int>(best);
    }
    canonicalize_labels(out.labels, out.k);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
