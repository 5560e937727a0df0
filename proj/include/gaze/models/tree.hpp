#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/tree.hpp
// BRIEF: CART trees. Classification trees split on Gini impurity (no depth
//        limit, min-split 2, ties toward the lower feature index); leaves
//        carry the positive-class fraction. The regression variant fits
//        gradient targets for boosting with Newton leaf values.
// =============================================================================

namespace gaze::models {

namespace tree_detail {

struct Node {
    int feature = -1;  // -1 = leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = std::numeric_limits<double>::infinity();  // lower is better
};

/// Weighted Gini of a candidate threshold scan over one feature. `rows` come
/// pre-sorted by the feature value.
inline Split best_gini_split(const Matrix& X, const std::vector<int>& y,
                             const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& features) {
    Split best;
    const double n = static_cast<double>(rows.size());
    double total_pos = 0.0;
    for (std::size_t r : rows) total_pos += y[r] == 1 ? 1.0 : 0.0;

    std::vector<std::size_t> sorted(rows);
    for (std::size_t f : features) {
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            if (X[a][f] != X[b][f]) return X[a][f] < X[b][f];
            return a < b;
        });
        double left_pos = 0.0;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            left_pos += y[sorted[i]] == 1 ? 1.0 : 0.0;
            const double xa = X[sorted[i]][f];
            const double xb = X[sorted[i + 1]][f];
            if (xa == xb) continue;
            const double nl = static_cast<double>(i + 1);
            const double nr = n - nl;
            const double pl = left_pos / nl;
            const double pr = (total_pos - left_pos) / nr;
            const double gini = (nl * 2.0 * pl * (1.0 - pl) + nr * 2.0 * pr * (1.0 - pr)) / n;
            if (gini < best.score) {
                best.found = true;
                best.score = gini;
                best.feature = f;
                best.threshold = 0.5 * (xa + xb);
            }
        }
    }
    return best;
}

}  // namespace tree_detail

/// Feature-subset source for node splits: the full set for a plain tree, a
/// seeded random draw for forests.
class FeatureSampler {
public:
    FeatureSampler(std::size_t n_features, std::size_t per_split, Rng* rng)
        : n_features_(n_features), per_split_(std::min(per_split, n_features)), rng_(rng) {}

    std::vector<std::size_t> draw() {
        std::vector<std::size_t> all(n_features_);
        for (std::size_t i = 0; i < n_features_; ++i) all[i] = i;
        if (!rng_ || per_split_ >= n_features_) return all;
        // Partial Fisher-Yates, then ascending order so tie-breaks stay
        // toward the lower feature index.
        for (std::size_t i = 0; i < per_split_; ++i) {
            std::swap(all[i], all[i + rng_->uniform_index(n_features_ - i)]);
        }
        all.resize(per_split_);
        std::sort(all.begin(), all.end());
        return all;
    }

private:
    std::size_t n_features_;
    std::size_t per_split_;
    Rng* rng_;
};

class ClassificationTree {
public:
    void fit(const Matrix& X, const std::vector<int>& y, const std::vector<std::size_t>& rows,
             FeatureSampler& sampler) {
        nodes_.clear();
        grow(X, y, rows, sampler);
    }

    double score_row(const std::vector<double>& row) const {
        int at = 0;
        while (nodes_[at].feature >= 0) {
            at = row[nodes_[at].feature] <= nodes_[at].threshold ? nodes_[at].left
                                                                 : nodes_[at].right;
        }
        return nodes_[at].value;
    }

    std::size_t n_nodes() const { return nodes_.size(); }

private:
    int grow(const Matrix& X, const std::vector<int>& y, const std::vector<std::size_t>& rows,
             FeatureSampler& sampler) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();

        double pos = 0.0;
        for (std::size_t r : rows) pos += y[r] == 1 ? 1.0 : 0.0;
        nodes_[id].value = pos / static_cast<double>(rows.size());

        if (rows.size() < 2 || pos == 0.0 || pos == static_cast<double>(rows.size())) return id;

        const std::vector<std::size_t> features = sampler.draw();
        const tree_detail::Split split = tree_detail::best_gini_split(X, y, rows, features);
        if (!split.found) return id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
            (X[r][split.feature] <= split.threshold ? left : right).push_back(r);
        }
        if (left.empty() || right.empty()) return id;

        nodes_[id].feature = static_cast<int>(split.feature);
        nodes_[id].threshold = split.threshold;
        const int l = grow(X, y, left, sampler);
        nodes_[id].left = l;
        const int r = grow(X, y, right, sampler);
        nodes_[id].right = r;
        return id;
    }

    std::vector<tree_detail::Node> nodes_;
};

class DecisionTree final : public Model {
public:
    DecisionTree(const Matrix& X, const std::vector<int>& y, const ModelSpec&) {
        check_training_inputs(X, y);
        n_features_ = X[0].size();
        std::vector<std::size_t> rows(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) rows[i] = i;
        FeatureSampler sampler(n_features_, n_features_, nullptr);
        tree_.fit(X, y, rows, sampler);
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) out.push_back(tree_.score_row(row));
        return out;
    }

    std::size_t n_features() const override { return n_features_; }

private:
    ClassificationTree tree_;
    std::size_t n_features_ = 0;
};

// ----------------------------------------------------------------------------
// Depth-limited regression tree on (gradient, hessian) targets for boosting.
// Splits minimize squared error of the gradient; leaf value is the Newton
// step sum(g)/max(sum(h), 1e-12).
// ----------------------------------------------------------------------------

class GradientTree {
public:
    void fit(const Matrix& X, const std::vector<double>& grad, const std::vector<double>& hess,
             const std::vector<std::size_t>& rows, std::size_t max_depth) {
        nodes_.clear();
        grow(X, grad, hess, rows, max_depth);
    }

    double value_for(const std::vector<double>& row) const {
        int at = 0;
        while (nodes_[at].feature >= 0) {
            at = row[nodes_[at].feature] <= nodes_[at].threshold ? nodes_[at].left
                                                                 : nodes_[at].right;
        }
        return nodes_[at].value;
    }

private:
    int grow(const Matrix& X, const std::vector<double>& grad, const std::vector<double>& hess,
             const std::vector<std::size_t>& rows, std::size_t depth) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();

        double g_sum = 0.0, h_sum = 0.0;
        for (std::size_t r : rows) {
            g_sum += grad[r];
            h_sum += hess[r];
        }
        nodes_[id].value = g_sum / std::max(h_sum, 1e-12);
        if (depth == 0 || rows.size() < 2) return id;

        // Best SSE split of the gradient targets.
        bool found = false;
        std::size_t best_f = 0;
        double best_t = 0.0;
        double best_gain = 1e-12;
        std::vector<std::size_t> sorted(rows);
        const double n = static_cast<double>(rows.size());
        for (std::size_t f = 0; f < X[0].size(); ++f) {
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                if (X[a][f] != X[b][f]) return X[a][f] < X[b][f];
                return a < b;
            });
            double left_sum = 0.0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                left_sum += grad[sorted[i]];
                const double xa = X[sorted[i]][f];
                const double xb = X[sorted[i + 1]][f];
                if (xa == xb) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = n - nl;
                const double gain = left_sum * left_sum / nl +
                                    (g_sum - left_sum) * (g_sum - left_sum) / nr -
                                    g_sum * g_sum / n;
                if (gain > best_gain) {
                    found = true;
                    best_gain = gain;
                    best_f = f;
                    best_t = 0.5 * (xa + xb);
                }
            }
        }
        if (!found) return id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
            (X[r][best_f] <= best_t ? left : right).push_back(r);
        }
        if (left.empty() || right.empty()) return id;

        nodes_[id].feature = static_cast<int>(best_f);
        nodes_[id].threshold = best_t;
        const int l = grow(X, grad, hess, left, depth - 1);
        nodes_[id].left = l;
        const int r = grow(X, grad, hess, right, depth - 1);
        nodes_[id].right = r;
        return id;
    }

    std::vector<tree_detail::Node> nodes_;
};

}  // namespace gaze::models
