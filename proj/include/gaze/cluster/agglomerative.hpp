#pragma once

#include <limits>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/agglomerative.hpp
// BRIEF: Bottom-up Ward clustering via the Lance-Williams update. Merge cost
//        is the increase in total within-cluster variance; the cost sequence
//        is non-decreasing (Ward linkage is reducible).
// =============================================================================

namespace gaze::cluster {

namespace detail {

/// Ward merge sequence on a distance-matrix representation. Each active
/// cluster keeps a stable id = smallest member point index; cost ties break
/// toward the lexicographically smallest id pair.
/// Returns per-point labels for a cut at k clusters; `merge_costs` (optional)
/// receives the variance increase of every merge performed.
inline std::vector<int> ward_cut(const std::vector<Point>& points, std::size_t k,
                                 std::vector<double>* merge_costs) {
    const std::size_t n = points.size();
    // d2[a][b] holds the Lance-Williams Ward distance (squared scale, equal to
    // twice the variance increase of merging a and b).
    std::vector<std::vector<double>> d2(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d2[i][j] = d2[j][i] = sq_dist(points[i], points[j]);
        }
    }

    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1);
    std::vector<std::vector<int>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};

    std::size_t n_active = n;
    while (n_active > k) {
        std::size_t bi = n, bj = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (d2[i][j] < best) {
                    best = d2[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        if (merge_costs) merge_costs->push_back(0.5 * best);

        // Lance-Williams Ward update into slot bi (bi < bj keeps ids stable:
        // the merged cluster inherits the smaller id).
        const double ni = static_cast<double>(size[bi]);
        const double nj = static_cast<double>(size[bj]);
        for (std::size_t h = 0; h < n; ++h) {
            if (!active[h] || h == bi || h == bj) continue;
            const double nh = static_cast<double>(size[h]);
            const double denom = ni + nj + nh;
            d2[bi][h] = d2[h][bi] =
                ((ni + nh) * d2[bi][h] + (nj + nh) * d2[bj][h] - nh * d2[bi][bj]) / denom;
        }
        size[bi] += size[bj];
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        active[bj] = false;
        --n_active;
    }

    std::vector<int> labels(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (int m : members[i]) labels[m] = next;
        ++next;
    }
    return labels;
}

}  // namespace detail

inline ClusterAssignment agglomerative(const std::vector<Point>& points, std::size_t k,
                                       std::vector<double>* merge_costs = nullptr) {
    const std::size_t n = points.size();
    HyperParams params;
    params.k = k;
    params.validate(Algorithm::AC);
    if (n < k) throw DataError("insufficient points: " + std::to_string(n) + " < k=" + std::to_string(k));

    ClusterAssignment out;
    out.algorithm = Algorithm::AC;
    out.params = params;
    out.labels = detail::ward_cut(points, k, merge_costs);
    canonicalize_labels(out.labels, out.k);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
