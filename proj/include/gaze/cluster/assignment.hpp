#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/assignment.hpp
// BRIEF: Cluster assignment and hyperparameter records shared by all seven
//        clustering algorithms. Label -1 is the noise sentinel; non-noise
//        labels are contiguous from 0 in first-touch order.
// =============================================================================

namespace gaze::cluster {

enum class Algorithm { KMeans, KMedoids, AC, BIRCH, DBSCAN, OPTICS, GMM };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::KMeans, Algorithm::KMedoids, Algorithm::AC,    Algorithm::BIRCH,
    Algorithm::DBSCAN, Algorithm::OPTICS,   Algorithm::GMM};

inline std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::KMeans: return "kmeans";
        case Algorithm::KMedoids: return "kmedoids";
        case Algorithm::AC: return "ac";
        case Algorithm::BIRCH: return "birch";
        case Algorithm::DBSCAN: return "dbscan";
        case Algorithm::OPTICS: return "optics";
        case Algorithm::GMM: return "gmm";
    }
    throw Error("unreachable algorithm enum");
}

inline Algorithm algorithm_from_string(const std::string& s) {
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == s) return a;
    }
    throw ConfigError("unknown algorithm \"" + s + "\"");
}

struct HyperParams {
    std::size_t k = 2;           // partitioning / hierarchical / GMM
    double eps = 1.0;            // DBSCAN radius, pixels
    std::size_t min_pts = 4;     // DBSCAN / OPTICS
    double xi = 0.05;            // OPTICS steepness, in (0,1)
    std::size_t branching = 50;  // BIRCH tree fanout
    double threshold = 1.0;      // BIRCH subcluster radius
    std::uint64_t seed = 0;
    std::size_t max_iter = 300;
    double tol = 1e-6;

    void validate(Algorithm a) const {
        switch (a) {
            case Algorithm::KMeans:
            case Algorithm::KMedoids:
            case Algorithm::AC:
            case Algorithm::GMM:
                if (k < 2) throw ConfigError("k must be >= 2");
                break;
            case Algorithm::BIRCH:
                if (k < 2) throw ConfigError("k must be >= 2");
                if (!(threshold > 0.0)) throw ConfigError("threshold must be > 0");
                if (branching < 2) throw ConfigError("branching must be >= 2");
                break;
            case Algorithm::DBSCAN:
                if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
                if (min_pts < 2) throw ConfigError("min_pts must be >= 2");
                break;
            case Algorithm::OPTICS:
                if (min_pts < 2) throw ConfigError("min_pts must be >= 2");
                if (!(xi > 0.0) || !(xi < 1.0)) throw ConfigError("xi must be in (0,1)");
                break;
        }
    }
};

struct ClusterAssignment {
    std::vector<int> labels;  // -1 = noise
    std::size_t k = 0;        // non-noise cluster count
    Algorithm algorithm = Algorithm::KMeans;
    HyperParams params;
    std::vector<Point> centroids;  // optional, one per non-noise cluster

    std::size_t noise_count() const {
        std::size_t n = 0;
        for (int l : labels) n += (l == -1);
        return n;
    }

    double noise_fraction() const {
        return labels.empty() ? 0.0 : static_cast<double>(noise_count()) / labels.size();
    }
};

/// Renames non-noise labels to {0..k-1} in first-occurrence order and fills
/// in k. Noise stays -1. Applied by every algorithm before returning.
inline void canonicalize_labels(std::vector<int>& labels, std::size_t& k_out) {
    std::map<int, int> remap;
    int next = 0;
    for (int& l : labels) {
        if (l == -1) continue;
        auto [it, inserted] = remap.emplace(l, next);
        if (inserted) ++next;
        l = it->second;
    }
    k_out = static_cast<std::size_t>(next);
}

/// Per-cluster mean positions over non-noise points, label order.
inline std::vector<Point> label_centroids(const std::vector<Point>& points,
                                          const std::vector<int>& labels, std::size_t k) {
    std::vector<Point> c(k);
    std::vector<std::size_t> n(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int l = labels[i];
        if (l < 0) continue;
        c[l].x += points[i].x;
        c[l].y += points[i].y;
        ++n[l];
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (n[j] > 0) {
            c[j].x /= static_cast<double>(n[j]);
            c[j].y /= static_cast<double>(n[j]);
        }
    }
    return c;
}

inline nlohmann::json params_to_json(Algorithm a, const HyperParams& p) {
    nlohmann::json j;
    switch (a) {
        case Algorithm::KMeans:
        case Algorithm::GMM:
            j = {{"k", p.k}, {"seed", p.seed}, {"max_iter", p.max_iter}, {"tol", p.tol}};
            break;
        case Algorithm::KMedoids:
            j = {{"k", p.k}, {"seed", p.seed}, {"max_iter", p.max_iter}};
            break;
        case Algorithm::AC:
            j = {{"k", p.k}};
            break;
        case Algorithm::BIRCH:
            j = {{"k", p.k}, {"threshold", p.threshold}, {"branching", p.branching}};
            break;
        case Algorithm::DBSCAN:
            j = {{"eps", p.eps}, {"min_pts", p.min_pts}};
            break;
        case Algorithm::OPTICS:
            j = {{"min_pts", p.min_pts}, {"xi", p.xi}};
            break;
    }
    return j;
}

inline nlohmann::json to_json(const ClusterAssignment& a) {
    return nlohmann::json{{"algorithm", to_string(a.algorithm)},
                          {"params", params_to_json(a.algorithm, a.params)},
                          {"k", a.k},
                          {"labels", a.labels}};
}

}  // namespace gaze::cluster
