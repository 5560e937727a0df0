#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "gaze/cluster/agglomerative.hpp"
#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/cluster/birch.hpp
// BRIEF: Single-pass CF-tree insertion (cluster feature = count, linear sum,
//        squared sum), then Ward agglomeration of the leaf subcluster
//        centroids into k global clusters. Each point is labeled by the leaf
//        subcluster it was absorbed into.
// =============================================================================

namespace gaze::cluster {

namespace detail {

struct CF {
    double n = 0.0;
    double lsx = 0.0;
    double lsy = 0.0;
    double ss = 0.0;  // sum of squared norms

    void add(const Point& p) {
        n += 1.0;
        lsx += p.x;
        lsy += p.y;
        ss += p.x * p.x + p.y * p.y;
    }
    void add(const CF& o) {
        n += o.n;
        lsx += o.lsx;
        lsy += o.lsy;
        ss += o.ss;
    }
    Point centroid() const { return {lsx / n, lsy / n}; }
    double radius() const {
        const Point c = centroid();
        const double r2 = ss / n - (c.x * c.x + c.y * c.y);
        return std::sqrt(std::max(0.0, r2));
    }
};

struct CFNode {
    bool is_leaf = true;
    std::vector<CF> cfs;  // per-entry aggregate (leaf subclusters or child summaries)
    std::vector<int> entry_ids;                     // leaf only, stable subcluster ids
    std::vector<std::unique_ptr<CFNode>> children;  // internal only, parallel to cfs
};

class CFTree {
public:
    CFTree(double threshold, std::size_t branching)
        : threshold_(threshold), branching_(branching), root_(std::make_unique<CFNode>()) {}

    /// Inserts one point and returns the id of the leaf subcluster it joined.
    int insert(const Point& p) {
        auto [id, sibling] = insert_rec(root_.get(), p);
        if (sibling) {
            auto new_root = std::make_unique<CFNode>();
            new_root->is_leaf = false;
            new_root->cfs.push_back(aggregate(*root_));
            new_root->cfs.push_back(aggregate(*sibling));
            new_root->children.push_back(std::move(root_));
            new_root->children.push_back(std::move(sibling));
            root_ = std::move(new_root);
        }
        return id;
    }

    /// Leaf subclusters in left-to-right tree order: (id, cf).
    std::vector<std::pair<int, CF>> subclusters() const {
        std::vector<std::pair<int, CF>> out;
        collect(root_.get(), out);
        return out;
    }

private:
    static CF aggregate(const CFNode& node) {
        CF total;
        for (const CF& cf : node.cfs) total.add(cf);
        return total;
    }

    static void collect(const CFNode* node, std::vector<std::pair<int, CF>>& out) {
        if (node->is_leaf) {
            for (std::size_t i = 0; i < node->cfs.size(); ++i) {
                out.emplace_back(node->entry_ids[i], node->cfs[i]);
            }
            return;
        }
        for (const auto& child : node->children) collect(child.get(), out);
    }

    static std::size_t nearest_entry(const CFNode& node, const Point& p) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < node.cfs.size(); ++i) {
            const double d = sq_dist(node.cfs[i].centroid(), p);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    /// Farthest-pair split of a node's entries; entries keep their identity.
    std::unique_ptr<CFNode> split(CFNode* node) {
        const std::size_t m = node->cfs.size();
        std::size_t sa = 0, sb = 1;
        double far = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double d = sq_dist(node->cfs[i].centroid(), node->cfs[j].centroid());
                if (d > far) {
                    far = d;
                    sa = i;
                    sb = j;
                }
            }
        }
        auto sibling = std::make_unique<CFNode>();
        sibling->is_leaf = node->is_leaf;

        CFNode keep;
        keep.is_leaf = node->is_leaf;
        const Point ca = node->cfs[sa].centroid();
        const Point cb = node->cfs[sb].centroid();
        for (std::size_t i = 0; i < m; ++i) {
            const Point c = node->cfs[i].centroid();
            CFNode& dst = sq_dist(c, ca) <= sq_dist(c, cb) ? keep : *sibling;
            dst.cfs.push_back(node->cfs[i]);
            if (node->is_leaf) {
                dst.entry_ids.push_back(node->entry_ids[i]);
            } else {
                dst.children.push_back(std::move(node->children[i]));
            }
        }
        *node = std::move(keep);
        return sibling;
    }

    /// Returns the subcluster id and, when the node overflowed, its new sibling.
    std::pair<int, std::unique_ptr<CFNode>> insert_rec(CFNode* node, const Point& p) {
        if (node->is_leaf) {
            int id;
            if (!node->cfs.empty()) {
                const std::size_t e = nearest_entry(*node, p);
                CF merged = node->cfs[e];
                merged.add(p);
                if (merged.radius() <= threshold_) {
                    node->cfs[e] = merged;
                    return {node->entry_ids[e], nullptr};
                }
            }
            CF fresh;
            fresh.add(p);
            id = next_id_++;
            node->cfs.push_back(fresh);
            node->entry_ids.push_back(id);
            if (node->cfs.size() > branching_) return {id, split(node)};
            return {id, nullptr};
        }

        const std::size_t c = nearest_entry(*node, p);
        auto [id, sibling] = insert_rec(node->children[c].get(), p);
        node->cfs[c] = aggregate(*node->children[c]);
        if (sibling) {
            node->cfs.insert(node->cfs.begin() + c + 1, aggregate(*sibling));
            node->children.insert(node->children.begin() + c + 1, std::move(sibling));
            if (node->children.size() > branching_) return {id, split(node)};
        }
        return {id, nullptr};
    }

    double threshold_;
    std::size_t branching_;
    std::unique_ptr<CFNode> root_;
    int next_id_ = 0;
};

}  // namespace detail

inline ClusterAssignment birch(const std::vector<Point>& points, double threshold,
                               std::size_t branching, std::size_t k) {
    const std::size_t n = points.size();
    HyperParams params;
    params.k = k;
    params.threshold = threshold;
    params.branching = branching;
    params.validate(Algorithm::BIRCH);
    if (n < k) throw DataError("insufficient points: " + std::to_string(n) + " < k=" + std::to_string(k));

    detail::CFTree tree(threshold, branching);
    std::vector<int> point_entry(n);
    for (std::size_t i = 0; i < n; ++i) point_entry[i] = tree.insert(points[i]);

    const auto subs = tree.subclusters();
    if (subs.size() < k) {
        throw DataError("insufficient subclusters: CF tree produced " + std::to_string(subs.size()) +
                        " for k=" + std::to_string(k) + "; lower the threshold");
    }

    std::vector<Point> sub_centroids;
    sub_centroids.reserve(subs.size());
    for (const auto& [id, cf] : subs) sub_centroids.push_back(cf.centroid());
    const std::vector<int> sub_labels = detail::ward_cut(sub_centroids, k, nullptr);

    std::vector<int> entry_to_cluster(subs.size());
    int max_id = 0;
    for (const auto& [id, cf] : subs) max_id = std::max(max_id, id);
    entry_to_cluster.assign(static_cast<std::size_t>(max_id) + 1, -1);
    for (std::size_t s = 0; s < subs.size(); ++s) entry_to_cluster[subs[s].first] = sub_labels[s];

    ClusterAssignment out;
    out.algorithm = Algorithm::BIRCH;
    out.params = params;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = entry_to_cluster[point_entry[i]];
    canonicalize_labels(out.labels, out.k);
    out.centroids = label_centroids(points, out.labels, out.k);
    return out;
}

}  // namespace gaze::cluster
