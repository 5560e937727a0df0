#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/optics.hpp
// BRIEF: OPTICS reachability ordering (eps = infinity) with xi-steepness
//        cluster extraction. Points not covered by any extracted cluster are
//        labeled -1.
// =============================================================================

namespace gaze::cluster {

struct OpticsOrdering {
    std::vector<std::size_t> order;     // point indices in processing order
    std::vector<double> reachability;   // aligned with `order`; inf at walk starts
    std::vector<double> core_distance;  // per point index; inf when n < min_pts
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Priority-queue walk: pop the unprocessed point with the smallest current
/// reachability (ties toward the lower point index), then relax every
/// unprocessed point through the popped point's core distance.
inline OpticsOrdering optics_order(const std::vector<Point>& points, std::size_t min_pts) {
    const std::size_t n = points.size();
    OpticsOrdering out;
    out.order.reserve(n);
    out.reachability.reserve(n);
    out.core_distance.assign(n, kInf);

    std::vector<double> dist_buf(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (n < min_pts) break;
        for (std::size_t j = 0; j < n; ++j) dist_buf[j] = dist(points[i], points[j]);
        std::nth_element(dist_buf.begin(), dist_buf.begin() + (min_pts - 1), dist_buf.end());
        out.core_distance[i] = dist_buf[min_pts - 1];  // self distance 0 counts
    }

    std::vector<bool> processed(n, false);
    std::vector<double> reach(n, kInf);
    using QItem = std::pair<double, std::size_t>;  // (reachability, index)
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;

    auto relax_from = [&](std::size_t p) {
        const double cd = out.core_distance[p];
        if (std::isinf(cd)) return;
        for (std::size_t q = 0; q < n; ++q) {
            if (processed[q]) continue;
            const double r = std::max(cd, dist(points[p], points[q]));
            if (r < reach[q]) {
                reach[q] = r;
                heap.emplace(r, q);
            }
        }
    };

    for (std::size_t start = 0; start < n; ++start) {
        if (processed[start]) continue;
        processed[start] = true;
        out.order.push_back(start);
        out.reachability.push_back(kInf);
        relax_from(start);
        while (!heap.empty()) {
            const auto [r, q] = heap.top();
            heap.pop();
            if (processed[q] || r != reach[q]) continue;  // stale entry
            processed[q] = true;
            out.order.push_back(q);
            out.reachability.push_back(r);
            relax_from(q);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// xi-steepness extraction over the reachability plot (sentinel inf appended).
// ---------------------------------------------------------------------------

struct SteepDownArea {
    std::size_t start = 0;
    std::size_t end = 0;
    double mib = 0.0;  // maximum reachability seen between area end and now
};

inline bool steep_down_at(const std::vector<double>& r, std::size_t i, double xi_c) {
    if (std::isinf(r[i]) && std::isinf(r[i + 1])) return false;
    if (r[i] == 0.0 && r[i + 1] == 0.0) return false;
    return r[i] * xi_c >= r[i + 1];
}

inline bool steep_up_at(const std::vector<double>& r, std::size_t i, double xi_c) {
    if (std::isinf(r[i]) && std::isinf(r[i + 1])) return false;
    if (r[i] == 0.0 && r[i + 1] == 0.0) return false;
    return r[i] <= r[i + 1] * xi_c;
}

/// Extends a steep region starting at `start`: steep points reset the
/// tolerance budget, up to min_pts consecutive non-steep points are absorbed
/// as long as they do not move against the region direction.
template <typename SteepFn, typename AgainstFn>
std::size_t extend_region(std::size_t start, std::size_t n_flags, SteepFn steep, AgainstFn against,
                          std::size_t min_pts) {
    std::size_t non_steep = 0;
    std::size_t end = start;
    std::size_t i = start;
    while (i < n_flags) {
        if (steep(i)) {
            non_steep = 0;
            end = i;
        } else if (!against(i)) {
            ++non_steep;
            if (non_steep > min_pts) break;
        } else {
            break;
        }
        ++i;
    }
    return end;  // inclusive
}

/// Returns cluster spans [start, end] over ordering positions, smaller
/// (nested) clusters before the larger ones that contain them.
inline std::vector<std::pair<std::size_t, std::size_t>> xi_clusters(std::vector<double> r,
                                                                    double xi, std::size_t min_pts) {
    const std::size_t n = r.size();
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    if (n < 2) return clusters;
    r.push_back(kInf);  // sentinel
    const double xi_c = 1.0 - xi;

    auto sd = [&](std::size_t i) { return steep_down_at(r, i, xi_c); };
    auto su = [&](std::size_t i) { return steep_up_at(r, i, xi_c); };
    auto down = [&](std::size_t i) { return r[i] > r[i + 1]; };
    auto up = [&](std::size_t i) { return r[i] < r[i + 1]; };

    std::vector<SteepDownArea> sdas;
    auto filter_sdas = [&](double mib) {
        if (std::isinf(mib)) {
            sdas.clear();
            return;
        }
        std::vector<SteepDownArea> kept;
        for (SteepDownArea& d : sdas) {
            if (mib <= r[d.start] * xi_c) {
                d.mib = std::max(d.mib, mib);
                kept.push_back(d);
            }
        }
        sdas = std::move(kept);
    };

    std::size_t index = 0;
    double mib = 0.0;
    while (index < n) {
        mib = std::max(mib, r[index]);
        if (sd(index)) {
            filter_sdas(mib);
            const std::size_t end = extend_region(index, n, sd, up, min_pts);
            sdas.push_back({index, end, 0.0});
            index = end + 1;
            mib = r[index];
        } else if (su(index)) {
            filter_sdas(mib);
            const std::size_t u_start = index;
            const std::size_t u_end = extend_region(index, n, su, down, min_pts);
            index = u_end + 1;
            mib = r[index];

            std::vector<std::pair<std::size_t, std::size_t>> found;
            for (const SteepDownArea& d : sdas) {
                std::size_t c_start = d.start;
                std::size_t c_end = u_end;
                // xi-significance against the shallower finite boundary: the
                // maximum reachability inside the candidate must sit at least
                // a factor (1-xi) below it. A span with no finite boundary on
                // either side (walk starts, plot sentinel) is not a valley.
                const double boundary = std::min(r[d.start], r[c_end + 1]);
                if (std::isinf(boundary)) continue;
                if (boundary * xi_c < d.mib) continue;

                // Align the shallower side with the deeper side's level.
                const double d_max = r[d.start];
                if (d_max * xi_c >= r[c_end + 1]) {
                    while (c_start < d.end && r[c_start + 1] > r[c_end + 1]) ++c_start;
                } else if (r[c_end + 1] * xi_c >= d_max) {
                    while (c_end > u_start && r[c_end - 1] > d_max) --c_end;
                }
                if (c_end < c_start || c_end - c_start + 1 < min_pts) continue;
                if (c_start > d.end) continue;
                if (c_end < u_start) continue;
                found.emplace_back(c_start, c_end);
            }
            // Deeper (later-discovered) down areas yield the nested clusters;
            // emit those first so leaf clusters win the labeling pass.
            for (auto it = found.rbegin(); it != found.rend(); ++it) clusters.push_back(*it);
        } else {
            ++index;
        }
    }
    return clusters;
}

}  // namespace detail

/// Ordering plus extraction; `ordering_out`, when given, receives the walk for
/// inspection.
inline ClusterAssignment optics(const std::vector<Point>& points, std::size_t min_pts, double xi,
                                OpticsOrdering* ordering_out = nullptr) {
    HyperParams params;
    params.min_pts = min_pts;
    params.xi = xi;
    params.validate(Algorithm::OPTICS);

    const std::size_t n = points.size();
    OpticsOrdering ord = detail::optics_order(points, min_pts);
    const auto spans = detail::xi_clusters(ord.reachability, xi, min_pts);

    std::vector<int> labels(n, -1);
    int next = 0;
    for (const auto& [s, e] : spans) {
        bool free_span = true;
        for (std::size_t pos = s; pos <= e && free_span; ++pos) {
            free_span = labels[ord.order[pos]] == -1;
        }
        if (!free_span) continue;
        for (std::size_t pos = s; pos <= e; ++pos) labels[ord.order[pos]] = next;
        ++next;
    }

    if (ordering_out) *ordering_out = ord;

    ClusterAssignment out;
    out.algorithm = Algorithm::OPTICS;
    out.params = params;
    out.labels = std::move(labels);
    // labels are already contiguous in span-claim order
    out.k = static_cast<std::size_t>(next);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
