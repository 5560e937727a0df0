#pragma once

#include <limits>
#include <optional>
#include <vector>

#include <json.hpp>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/indices.hpp
// BRIEF: Nine cluster-validity indices over a labeled 2-D point set. Noise
//        points (label -1) are stripped before any computation; a clustering
//        with fewer than 2 non-noise clusters yields MISSING for every index.
//        MISSING is an explicit absent value, never a silent zero.
//
// Adopted formulas (normative for this library):
//   SC    mean over points of (b-a)/max(a,b); singleton clusters score 0
//   CH    (B/(k-1)) / (W/(n-k))
//   DB    (1/k) sum_i max_{j!=i} (S_i+S_j)/d(c_i,c_j)
//   DB*   (1/k) sum_i [max_{j!=i}(S_i+S_j)] / [min_{j!=i} d(c_i,c_j)]
//   DI    min inter-cluster point distance / max cluster diameter
//   CSL   [sum_i (1/n_i) sum_x max_{y in C_i} d(x,y)] / [sum_i min_{j!=i} d(c_i,c_j)]
//   GD33  min_{i!=j} mean pairwise inter-cluster distance / max_i 2*(mean dist to centroid)
//   PBM   ((1/k) * (E1/Ek) * Dk)^2
//   STR   (E1/Ek) * (max centroid distance / min centroid distance)
// =============================================================================

namespace gaze::indices {

using Value = std::optional<double>;

struct IndexVector {
    Value sc, ch, db, db_star, di, csl, gd33, pbm, str;

    bool all_missing() const {
        return !sc && !ch && !db && !db_star && !di && !csl && !gd33 && !pbm && !str;
    }
};

/// The nine index identifiers in the feature-column order (Table-style
/// ordering: SC, CH, DB, CSL, DI, DB*, GD33, PBM, STR).
enum class Index { SC, CH, DB, CSL, DI, DBStar, GD33, PBM, STR };

inline constexpr Index kAllIndices[] = {Index::SC, Index::CH,     Index::DB,
                                        Index::CSL, Index::DI,    Index::DBStar,
                                        Index::GD33, Index::PBM,  Index::STR};

inline std::string to_string(Index idx) {
    switch (idx) {
        case Index::SC: return "sc";
        case Index::CH: return "ch";
        case Index::DB: return "db";
        case Index::CSL: return "csl";
        case Index::DI: return "di";
        case Index::DBStar: return "db_star";
        case Index::GD33: return "gd33";
        case Index::PBM: return "pbm";
        case Index::STR: return "str";
    }
    throw Error("unreachable index enum");
}

inline Value get(const IndexVector& v, Index idx) {
    switch (idx) {
        case Index::SC: return v.sc;
        case Index::CH: return v.ch;
        case Index::DB: return v.db;
        case Index::CSL: return v.csl;
        case Index::DI: return v.di;
        case Index::DBStar: return v.db_star;
        case Index::GD33: return v.gd33;
        case Index::PBM: return v.pbm;
        case Index::STR: return v.str;
    }
    throw Error("unreachable index enum");
}

namespace detail {

/// Noise-stripped view of a labeled point set with per-cluster bookkeeping.
struct Partition {
    std::vector<Point> pts;
    std::vector<int> labels;  // contiguous 0..k-1
    std::size_t k = 0;
    std::vector<std::size_t> sizes;
    std::vector<Point> centroids;
    Point global_centroid;

    bool degenerate() const { return k < 2 || pts.size() < 2; }
};

inline Partition make_partition(const std::vector<Point>& points, const std::vector<int>& labels) {
    Partition p;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (labels[i] < 0) continue;
        p.pts.push_back(points[i]);
        p.labels.push_back(labels[i]);
    }
    cluster::canonicalize_labels(p.labels, p.k);
    if (p.k == 0) return p;
    p.sizes.assign(p.k, 0);
    p.centroids.assign(p.k, {});
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
        ++p.sizes[p.labels[i]];
        p.centroids[p.labels[i]].x += p.pts[i].x;
        p.centroids[p.labels[i]].y += p.pts[i].y;
    }
    for (std::size_t c = 0; c < p.k; ++c) {
        p.centroids[c].x /= static_cast<double>(p.sizes[c]);
        p.centroids[c].y /= static_cast<double>(p.sizes[c]);
    }
    p.global_centroid = mean_point(p.pts);
    return p;
}

inline Value finite_or_missing(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

inline Value silhouette_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::size_t n = p.pts.size();
    double total = 0.0;
    std::vector<double> sum_to_cluster(p.k);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sum_to_cluster.begin(), sum_to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum_to_cluster[p.labels[j]] += dist(p.pts[i], p.pts[j]);
        }
        const int own = p.labels[i];
        if (p.sizes[own] <= 1) continue;  // singleton convention: s = 0
        const double a = sum_to_cluster[own] / static_cast<double>(p.sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < p.k; ++c) {
            if (static_cast<int>(c) == own) continue;
            b = std::min(b, sum_to_cluster[c] / static_cast<double>(p.sizes[c]));
        }
        const double m = std::max(a, b);
        total += m > 0.0 ? (b - a) / m : 0.0;
    }
    return finite_or_missing(total / static_cast<double>(n));
}

inline Value calinski_harabasz_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::size_t n = p.pts.size();
    if (n <= p.k) return std::nullopt;  // W=0, n-k=0 guard
    double B = 0.0, W = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        B += static_cast<double>(p.sizes[c]) * sq_dist(p.centroids[c], p.global_centroid);
    }
    for (std::size_t i = 0; i < n; ++i) W += sq_dist(p.pts[i], p.centroids[p.labels[i]]);
    if (W <= 0.0) return std::nullopt;
    const double kd = static_cast<double>(p.k);
    const double nd = static_cast<double>(n);
    return finite_or_missing((B / (kd - 1.0)) / (W / (nd - kd)));
}

inline std::vector<double> mean_centroid_dist(const Partition& p) {
    std::vector<double> s(p.k, 0.0);
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
        s[p.labels[i]] += dist(p.pts[i], p.centroids[p.labels[i]]);
    }
    for (std::size_t c = 0; c < p.k; ++c) s[c] /= static_cast<double>(p.sizes[c]);
    return s;
}

inline Value davies_bouldin_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::vector<double> S = mean_centroid_dist(p);
    double total = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < p.k; ++j) {
            if (j == i) continue;
            const double gap = dist(p.centroids[i], p.centroids[j]);
            if (gap <= 0.0) return std::nullopt;
            worst = std::max(worst, (S[i] + S[j]) / gap);
        }
        total += worst;
    }
    return finite_or_missing(total / static_cast<double>(p.k));
}

inline Value davies_bouldin_star_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::vector<double> S = mean_centroid_dist(p);
    double total = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        double num = 0.0;
        double den = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < p.k; ++j) {
            if (j == i) continue;
            num = std::max(num, S[i] + S[j]);
            den = std::min(den, dist(p.centroids[i], p.centroids[j]));
        }
        if (den <= 0.0) return std::nullopt;
        total += num / den;
    }
    return finite_or_missing(total / static_cast<double>(p.k));
}

inline Value dunn_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    double min_sep = std::numeric_limits<double>::infinity();
    double max_diam = 0.0;
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
        for (std::size_t j = i + 1; j < p.pts.size(); ++j) {
            const double d = dist(p.pts[i], p.pts[j]);
            if (p.labels[i] == p.labels[j]) {
                max_diam = std::max(max_diam, d);
            } else {
                min_sep = std::min(min_sep, d);
            }
        }
    }
    if (max_diam <= 0.0) return std::nullopt;
    return finite_or_missing(min_sep / max_diam);
}

inline Value cs_index_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::size_t n = p.pts.size();
    // Per-point max distance within its own cluster.
    std::vector<double> far(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p.labels[i] != p.labels[j]) continue;
            const double d = dist(p.pts[i], p.pts[j]);
            far[i] = std::max(far[i], d);
            far[j] = std::max(far[j], d);
        }
    }
    double num = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (p.labels[i] == static_cast<int>(c)) acc += far[i];
        }
        num += acc / static_cast<double>(p.sizes[c]);
    }
    double den = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < p.k; ++j) {
            if (j == i) continue;
            nearest = std::min(nearest, dist(p.centroids[i], p.centroids[j]));
        }
        den += nearest;
    }
    if (den <= 0.0) return std::nullopt;
    return finite_or_missing(num / den);
}

inline Value gd33_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    const std::size_t n = p.pts.size();
    // delta3(i,j): mean pairwise inter-cluster distance.
    std::vector<std::vector<double>> inter(p.k, std::vector<double>(p.k, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p.labels[i] == p.labels[j]) continue;
            const double d = dist(p.pts[i], p.pts[j]);
            inter[p.labels[i]][p.labels[j]] += d;
            inter[p.labels[j]][p.labels[i]] += d;
        }
    }
    double min_delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t j = i + 1; j < p.k; ++j) {
            const double pairs = static_cast<double>(p.sizes[i]) * static_cast<double>(p.sizes[j]);
            min_delta = std::min(min_delta, inter[i][j] / pairs);
        }
    }
    // Delta3: twice the mean distance to the cluster centroid.
    const std::vector<double> S = mean_centroid_dist(p);
    double max_span = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) max_span = std::max(max_span, 2.0 * S[c]);
    if (max_span <= 0.0) return std::nullopt;
    return finite_or_missing(min_delta / max_span);
}

inline Value pbm_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    double e1 = 0.0, ek = 0.0;
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
        e1 += dist(p.pts[i], p.global_centroid);
        ek += dist(p.pts[i], p.centroids[p.labels[i]]);
    }
    if (ek <= 0.0) return std::nullopt;
    double dk = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t j = i + 1; j < p.k; ++j) {
            dk = std::max(dk, dist(p.centroids[i], p.centroids[j]));
        }
    }
    const double base = (1.0 / static_cast<double>(p.k)) * (e1 / ek) * dk;
    return finite_or_missing(base * base);
}

inline Value str_index_impl(const Partition& p) {
    if (p.degenerate()) return std::nullopt;
    double e1 = 0.0, ek = 0.0;
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
        e1 += dist(p.pts[i], p.global_centroid);
        ek += dist(p.pts[i], p.centroids[p.labels[i]]);
    }
    if (ek <= 0.0) return std::nullopt;
    double max_gap = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t j = i + 1; j < p.k; ++j) {
            const double d = dist(p.centroids[i], p.centroids[j]);
            max_gap = std::max(max_gap, d);
            min_gap = std::min(min_gap, d);
        }
    }
    if (min_gap <= 0.0) return std::nullopt;
    return finite_or_missing((e1 / ek) * (max_gap / min_gap));
}

}  // namespace detail

// Public per-index entry points; each strips noise itself so it is safe on a
// raw assignment.

inline Value silhouette(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::silhouette_impl(detail::make_partition(pts, labels));
}
inline Value calinski_harabasz(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::calinski_harabasz_impl(detail::make_partition(pts, labels));
}
inline Value davies_bouldin(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::davies_bouldin_impl(detail::make_partition(pts, labels));
}
inline Value davies_bouldin_star(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::davies_bouldin_star_impl(detail::make_partition(pts, labels));
}
inline Value dunn(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::dunn_impl(detail::make_partition(pts, labels));
}
inline Value cs_index(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::cs_index_impl(detail::make_partition(pts, labels));
}
inline Value gd33(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::gd33_impl(detail::make_partition(pts, labels));
}
inline Value pbm(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::pbm_impl(detail::make_partition(pts, labels));
}
inline Value str_index(const std::vector<Point>& pts, const std::vector<int>& labels) {
    return detail::str_index_impl(detail::make_partition(pts, labels));
}

/// All nine indices with one noise-stripping pass.
inline IndexVector compute_all(const std::vector<Point>& pts, const cluster::ClusterAssignment& a) {
    const detail::Partition p = detail::make_partition(pts, a.labels);
    IndexVector v;
    if (p.degenerate()) return v;
    v.sc = detail::silhouette_impl(p);
    v.ch = detail::calinski_harabasz_impl(p);
    v.db = detail::davies_bouldin_impl(p);
    v.db_star = detail::davies_bouldin_star_impl(p);
    v.di = detail::dunn_impl(p);
    v.csl = detail::cs_index_impl(p);
    v.gd33 = detail::gd33_impl(p);
    v.pbm = detail::pbm_impl(p);
    v.str = detail::str_index_impl(p);
    return v;
}

inline nlohmann::json to_json(const IndexVector& v) {
    auto field = [](const Value& x) {
        return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
    };
    return nlohmann::json{{"sc", field(v.sc)},   {"ch", field(v.ch)},
                          {"db", field(v.db)},   {"db_star", field(v.db_star)},
                          {"di", field(v.di)},   {"csl", field(v.csl)},
                          {"gd33", field(v.gd33)}, {"pbm", field(v.pbm)},
                          {"str", field(v.str)}};
}

}  // namespace gaze::indices
