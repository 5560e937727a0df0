#pragma once

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/dbscan.hpp
// BRIEF: Density-based clustering with standard core/border/noise semantics.
//        A core point has >= min_pts neighbors within eps (inclusive of self);
//        clusters are maximal density-connected sets, labeled in first-touch
//        order. Neighbor queries go through a uniform grid of cell size eps.
// =============================================================================

namespace gaze::cluster {

namespace detail {

class EpsGrid {
public:
    EpsGrid(const std::vector<Point>& pts, double eps) : pts_(pts), eps_(eps) {
        cells_.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cells_[key(cell_of(pts[i].x), cell_of(pts[i].y))].push_back(i);
        }
    }

    /// Indices with dist <= eps, ascending (includes the query point itself).
    std::vector<std::size_t> neighbors(std::size_t q) const {
        std::vector<std::size_t> out;
        const Point& p = pts_[q];
        const std::int64_t cx = cell_of(p.x);
        const std::int64_t cy = cell_of(p.y);
        const double eps2 = eps_ * eps_;
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (std::size_t i : it->second) {
                    if (sq_dist(p, pts_[i]) <= eps2) out.push_back(i);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / eps_)); }
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(y);
    }

    const std::vector<Point>& pts_;
    double eps_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace detail

inline ClusterAssignment dbscan(const std::vector<Point>& points, double eps, std::size_t min_pts) {
    HyperParams params;
    params.eps = eps;
    params.min_pts = min_pts;
    params.validate(Algorithm::DBSCAN);

    const std::size_t n = points.size();
    const detail::EpsGrid grid(points, eps);

    constexpr int kUnvisited = -2;
    std::vector<int> labels(n, kUnvisited);
    int next_label = 0;

    for (std::size_t seed = 0; seed < n; ++seed) {
        if (labels[seed] != kUnvisited) continue;
        const std::vector<std::size_t> nbrs = grid.neighbors(seed);
        if (nbrs.size() < min_pts) {
            labels[seed] = -1;  // may be claimed later as a border point
            continue;
        }
        const int cluster = next_label++;
        labels[seed] = cluster;
        std::queue<std::size_t> frontier;
        for (std::size_t q : nbrs) {
            if (q == seed) continue;
            if (labels[q] == kUnvisited || labels[q] == -1) {
                if (labels[q] == kUnvisited) frontier.push(q);
                labels[q] = cluster;
            }
        }
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop();
            const std::vector<std::size_t> pn = grid.neighbors(p);
            if (pn.size() < min_pts) continue;  // border point, do not expand
            for (std::size_t q : pn) {
                if (labels[q] == kUnvisited || labels[q] == -1) {
                    if (labels[q] == kUnvisited) frontier.push(q);
                    labels[q] = cluster;
                }
            }
        }
    }

    ClusterAssignment out;
    out.algorithm = Algorithm::DBSCAN;
    out.params = params;
    out.labels = std::move(labels);
    // labels are already contiguous in cluster-creation order
    out.k = static_cast<std::size_t>(next_label);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
