#pragma once

// Test-only reference implementations, written independently of the library:
// straight textbook double loops over (x, y) pairs. These are the oracles the
// production code is checked against; they must not call into gaze::.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

struct P {
    double x;
    double y;
};

inline double pd(const P& a, const P& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Groups {
    // points grouped by cluster; noise already removed
    std::vector<std::vector<P>> cluster;
};

inline Groups group_by_label(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g;
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    g.cluster.resize(static_cast<std::size_t>(max_label + 1));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (labels[i] >= 0) g.cluster[labels[i]].push_back(pts[i]);
    }
    // drop empty clusters (labels need not be contiguous for the oracle)
    std::vector<std::vector<P>> kept;
    for (auto& c : g.cluster) {
        if (!c.empty()) kept.push_back(std::move(c));
    }
    g.cluster = std::move(kept);
    return g;
}

inline P centroid_of(const std::vector<P>& c) {
    P m{0, 0};
    for (const P& p : c) {
        m.x += p.x;
        m.y += p.y;
    }
    m.x /= c.size();
    m.y /= c.size();
    return m;
}

// ---------------------------------------------------------------------------
// Index oracles
// ---------------------------------------------------------------------------

inline std::optional<double> silhouette(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    if (g.cluster.size() < 2) return std::nullopt;
    // flatten with cluster ids
    std::vector<P> all;
    std::vector<std::size_t> cid;
    for (std::size_t c = 0; c < g.cluster.size(); ++c) {
        for (const P& p : g.cluster[c]) {
            all.push_back(p);
            cid.push_back(c);
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const std::size_t own = cid[i];
        if (g.cluster[own].size() == 1) continue;  // s = 0
        double a = 0.0;
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (j != i && cid[j] == own) a += pd(all[i], all[j]);
        }
        a /= static_cast<double>(g.cluster[own].size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < g.cluster.size(); ++c) {
            if (c == own) continue;
            double m = 0.0;
            for (const P& q : g.cluster[c]) m += pd(all[i], q);
            b = std::min(b, m / static_cast<double>(g.cluster[c].size()));
        }
        if (std::max(a, b) > 0.0) acc += (b - a) / std::max(a, b);
    }
    return acc / static_cast<double>(all.size());
}

inline std::optional<double> calinski_harabasz(const std::vector<P>& pts,
                                               const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    std::size_t n = 0;
    for (const auto& c : g.cluster) n += c.size();
    if (n <= k) return std::nullopt;
    P global{0, 0};
    for (const auto& c : g.cluster) {
        for (const P& p : c) {
            global.x += p.x;
            global.y += p.y;
        }
    }
    global.x /= n;
    global.y /= n;
    double B = 0.0, W = 0.0;
    for (const auto& c : g.cluster) {
        const P ctr = centroid_of(c);
        B += c.size() * (pd(ctr, global) * pd(ctr, global));
        for (const P& p : c) W += pd(p, ctr) * pd(p, ctr);
    }
    if (W <= 0.0) return std::nullopt;
    return (B / (k - 1.0)) / (W / (static_cast<double>(n) - static_cast<double>(k)));
}

inline std::optional<double> davies_bouldin(const std::vector<P>& pts,
                                            const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    std::vector<P> ctr(k);
    std::vector<double> S(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        ctr[c] = centroid_of(g.cluster[c]);
        for (const P& p : g.cluster[c]) S[c] += pd(p, ctr[c]);
        S[c] /= g.cluster[c].size();
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const double gap = pd(ctr[i], ctr[j]);
            if (gap <= 0.0) return std::nullopt;
            worst = std::max(worst, (S[i] + S[j]) / gap);
        }
        acc += worst;
    }
    return acc / k;
}

inline std::optional<double> davies_bouldin_star(const std::vector<P>& pts,
                                                 const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    std::vector<P> ctr(k);
    std::vector<double> S(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        ctr[c] = centroid_of(g.cluster[c]);
        for (const P& p : g.cluster[c]) S[c] += pd(p, ctr[c]);
        S[c] /= g.cluster[c].size();
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double num = 0.0;
        double den = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            num = std::max(num, S[i] + S[j]);
            den = std::min(den, pd(ctr[i], ctr[j]));
        }
        if (den <= 0.0) return std::nullopt;
        acc += num / den;
    }
    return acc / k;
}

inline std::optional<double> dunn(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    if (g.cluster.size() < 2) return std::nullopt;
    double min_sep = std::numeric_limits<double>::infinity();
    double max_diam = 0.0;
    for (std::size_t a = 0; a < g.cluster.size(); ++a) {
        for (const P& p : g.cluster[a]) {
            for (const P& q : g.cluster[a]) max_diam = std::max(max_diam, pd(p, q));
        }
        for (std::size_t b = a + 1; b < g.cluster.size(); ++b) {
            for (const P& p : g.cluster[a]) {
                for (const P& q : g.cluster[b]) min_sep = std::min(min_sep, pd(p, q));
            }
        }
    }
    if (max_diam <= 0.0) return std::nullopt;
    return min_sep / max_diam;
}

inline std::optional<double> cs_index(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    double num = 0.0;
    for (const auto& c : g.cluster) {
        double acc = 0.0;
        for (const P& p : c) {
            double far = 0.0;
            for (const P& q : c) far = std::max(far, pd(p, q));
            acc += far;
        }
        num += acc / c.size();
    }
    std::vector<P> ctr(k);
    for (std::size_t c = 0; c < k; ++c) ctr[c] = centroid_of(g.cluster[c]);
    double den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j) nearest = std::min(nearest, pd(ctr[i], ctr[j]));
        }
        den += nearest;
    }
    if (den <= 0.0) return std::nullopt;
    return num / den;
}

inline std::optional<double> gd33(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    double min_delta = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            double sum = 0.0;
            for (const P& p : g.cluster[a]) {
                for (const P& q : g.cluster[b]) sum += pd(p, q);
            }
            min_delta = std::min(sum / (g.cluster[a].size() * g.cluster[b].size()), min_delta);
        }
    }
    double max_span = 0.0;
    for (const auto& c : g.cluster) {
        const P ctr = centroid_of(c);
        double mean = 0.0;
        for (const P& p : c) mean += pd(p, ctr);
        max_span = std::max(max_span, 2.0 * mean / c.size());
    }
    if (max_span <= 0.0) return std::nullopt;
    return min_delta / max_span;
}

inline std::optional<double> pbm(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    std::size_t n = 0;
    P global{0, 0};
    for (const auto& c : g.cluster) {
        for (const P& p : c) {
            global.x += p.x;
            global.y += p.y;
            ++n;
        }
    }
    global.x /= n;
    global.y /= n;
    double e1 = 0.0, ek = 0.0;
    for (const auto& c : g.cluster) {
        const P ctr = centroid_of(c);
        for (const P& p : c) {
            e1 += pd(p, global);
            ek += pd(p, ctr);
        }
    }
    if (ek <= 0.0) return std::nullopt;
    double dk = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            dk = std::max(dk, pd(centroid_of(g.cluster[a]), centroid_of(g.cluster[b])));
        }
    }
    const double v = (1.0 / k) * (e1 / ek) * dk;
    return v * v;
}

inline std::optional<double> str_index(const std::vector<P>& pts, const std::vector<int>& labels) {
    Groups g = group_by_label(pts, labels);
    const std::size_t k = g.cluster.size();
    if (k < 2) return std::nullopt;
    std::size_t n = 0;
    P global{0, 0};
    for (const auto& c : g.cluster) {
        for (const P& p : c) {
            global.x += p.x;
            global.y += p.y;
            ++n;
        }
    }
    global.x /= n;
    global.y /= n;
    double e1 = 0.0, ek = 0.0;
    for (const auto& c : g.cluster) {
        const P ctr = centroid_of(c);
        for (const P& p : c) {
            e1 += pd(p, global);
            ek += pd(p, ctr);
        }
    }
    if (ek <= 0.0) return std::nullopt;
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const double d = pd(centroid_of(g.cluster[a]), centroid_of(g.cluster[b]));
            dmax = std::max(dmax, d);
            dmin = std::min(dmin, d);
        }
    }
    if (dmin <= 0.0) return std::nullopt;
    return (e1 / ek) * (dmax / dmin);
}

// ---------------------------------------------------------------------------
// Naive DBSCAN (textbook control flow, quadratic neighbor scans)
// ---------------------------------------------------------------------------

inline std::vector<int> dbscan(const std::vector<P>& pts, double eps, std::size_t min_pts) {
    const std::size_t n = pts.size();
    std::vector<int> label(n, -2);  // -2 undefined, -1 noise
    auto region_query = [&](std::size_t q) {
        std::vector<std::size_t> nbrs;
        for (std::size_t j = 0; j < n; ++j) {
            if (pd(pts[q], pts[j]) <= eps) nbrs.push_back(j);
        }
        return nbrs;
    };
    int c = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != -2) continue;
        std::vector<std::size_t> nbrs = region_query(i);
        if (nbrs.size() < min_pts) {
            label[i] = -1;
            continue;
        }
        ++c;
        label[i] = c;
        std::vector<std::size_t> seeds = nbrs;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const std::size_t q = seeds[s];
            if (label[q] == -1) label[q] = c;
            if (label[q] != -2) continue;
            label[q] = c;
            std::vector<std::size_t> qn = region_query(q);
            if (qn.size() >= min_pts) {
                seeds.insert(seeds.end(), qn.begin(), qn.end());
            }
        }
    }
    return label;
}

// ---------------------------------------------------------------------------
// Naive Ward: recompute the variance-increase criterion from scratch at each
// step over explicit member lists.
// ---------------------------------------------------------------------------

struct WardMerge {
    std::size_t a;  // smaller stable id (= min original index)
    std::size_t b;
    double cost;  // variance increase
};

inline std::vector<WardMerge> ward_merges(const std::vector<P>& pts, std::size_t stop_at_k) {
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < pts.size(); ++i) clusters.push_back({i});
    std::vector<WardMerge> merges;
    while (clusters.size() > stop_at_k) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                P ca{0, 0}, cb{0, 0};
                for (std::size_t m : clusters[i]) {
                    ca.x += pts[m].x;
                    ca.y += pts[m].y;
                }
                for (std::size_t m : clusters[j]) {
                    cb.x += pts[m].x;
                    cb.y += pts[m].y;
                }
                ca.x /= clusters[i].size();
                ca.y /= clusters[i].size();
                cb.x /= clusters[j].size();
                cb.y /= clusters[j].size();
                const double na = static_cast<double>(clusters[i].size());
                const double nb = static_cast<double>(clusters[j].size());
                const double d2 = (ca.x - cb.x) * (ca.x - cb.x) + (ca.y - cb.y) * (ca.y - cb.y);
                const double cost = na * nb / (na + nb) * d2;
                // tie-break on (cost, min id, max id)
                const std::size_t ida = std::min(clusters[i][0], clusters[j][0]);
                const std::size_t idb = std::max(clusters[i][0], clusters[j][0]);
                const std::size_t cur_ida = std::min(clusters[bi][0], clusters[bj][0]);
                const std::size_t cur_idb = std::max(clusters[bi][0], clusters[bj][0]);
                if (cost < best ||
                    (cost == best && (ida < cur_ida || (ida == cur_ida && idb < cur_idb)))) {
                    best = cost;
                    bi = i;
                    bj = j;
                }
            }
        }
        merges.push_back({std::min(clusters[bi][0], clusters[bj][0]),
                          std::max(clusters[bi][0], clusters[bj][0]), best});
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        clusters.erase(clusters.begin() + bj);
    }
    return merges;
}

/// Labels for a cut at k, first-occurrence canonical order.
inline std::vector<int> ward_labels(const std::vector<P>& pts, std::size_t k) {
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < pts.size(); ++i) clusters.push_back({i});
    for (const WardMerge& m : ward_merges(pts, k)) {
        std::size_t ai = clusters.size(), bi = clusters.size();
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c][0] == m.a) ai = c;
            if (clusters[c][0] == m.b) bi = c;
        }
        clusters[ai].insert(clusters[ai].end(), clusters[bi].begin(), clusters[bi].end());
        std::sort(clusters[ai].begin(), clusters[ai].end());
        clusters.erase(clusters.begin() + bi);
    }
    std::vector<int> labels(pts.size(), -1);
    std::sort(clusters.begin(), clusters.end());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t m : clusters[c]) labels[m] = static_cast<int>(c);
    }
    return labels;
}

// ---------------------------------------------------------------------------
// Brute-force convex hull: a point is a hull vertex iff it is not strictly
// inside the hull, checked by the edge test over all ordered pairs.
// ---------------------------------------------------------------------------

inline bool is_hull_vertex(const std::vector<P>& pts, std::size_t v) {
    // v is on the hull iff there is a line through v with all points on one
    // side. Check all directions defined by other points: O(n^2) per vertex.
    const std::size_t n = pts.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (a == v) continue;
        // candidate edge v->a: all points left-or-on?
        bool all_left = true, all_right = true;
        for (std::size_t b = 0; b < n; ++b) {
            if (b == v || b == a) continue;
            const double cr = (pts[a].x - pts[v].x) * (pts[b].y - pts[v].y) -
                              (pts[a].y - pts[v].y) * (pts[b].x - pts[v].x);
            if (cr < 0.0) all_left = false;
            if (cr > 0.0) all_right = false;
        }
        if (all_left || all_right) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random labeled instances for index comparisons
// ---------------------------------------------------------------------------

struct Instance {
    std::vector<P> pts;
    std::vector<int> labels;
};

inline Instance random_instance(std::mt19937_64& gen, std::size_t max_n, std::size_t max_k) {
    std::uniform_int_distribution<std::size_t> nd(max_k + 2, max_n);
    std::uniform_int_distribution<std::size_t> kd(2, max_k);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    const std::size_t n = nd(gen);
    const std::size_t k = kd(gen);
    Instance inst;
    // guarantee one point per cluster, the rest random
    for (std::size_t i = 0; i < n; ++i) {
        inst.pts.push_back({coord(gen), coord(gen)});
        inst.labels.push_back(i < k ? static_cast<int>(i)
                                    : static_cast<int>(gen() % k));
    }
    return inst;
}

}  // namespace oracle
