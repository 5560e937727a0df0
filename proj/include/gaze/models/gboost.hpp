#pragma once

#include <vector>

#include "gaze/models/tree.hpp"

// =============================================================================
// FILE: gaze/models/gboost.hpp
// BRIEF: Gradient boosting for logistic loss: depth-3 regression trees on the
//        negative gradient with Newton leaf values, shrinkage 0.1, and 0.8
//        row subsampling per round. Training loss is non-increasing per round.
// =============================================================================

namespace gaze::models {

class GradBoost final : public Model {
public:
    /// `loss_trace`, when given, receives the full-training-set logistic loss
    /// after every boosting round.
    GradBoost(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec,
              std::vector<double>* loss_trace = nullptr)
        : shrinkage_(spec.gb_learning_rate) {
        check_training_inputs(X, y);
        n_features_ = X[0].size();
        const std::size_t n = X.size();

        double pos = 0.0;
        for (int v : y) pos += v == 1 ? 1.0 : 0.0;
        const double prior = std::clamp(pos / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
        f0_ = std::log(prior / (1.0 - prior));

        std::vector<double> f(n, f0_);
        std::vector<double> grad(n), hess(n);
        const std::size_t n_sub =
            std::max<std::size_t>(1, static_cast<std::size_t>(spec.gb_subsample * n));

        for (std::size_t round = 0; round < spec.gb_rounds; ++round) {
            for (std::size_t i = 0; i < n; ++i) {
                const double p = sigmoid(f[i]);
                grad[i] = static_cast<double>(y[i]) - p;  // negative gradient
                hess[i] = std::max(p * (1.0 - p), 1e-12);
            }
            // Seeded row subsample, without replacement.
            Rng rng(derive_seed(spec.seed, 0x6B005ULL, round));
            std::vector<std::size_t> rows(n);
            for (std::size_t i = 0; i < n; ++i) rows[i] = i;
            rng.shuffle(rows);
            rows.resize(n_sub);
            std::sort(rows.begin(), rows.end());

            GradientTree tree;
            tree.fit(X, grad, hess, rows, spec.gb_depth);
            for (std::size_t i = 0; i < n; ++i) f[i] += shrinkage_ * tree.value_for(X[i]);
            trees_.push_back(std::move(tree));

            if (loss_trace) {
                double loss = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    // Stable logistic loss: max(z,0) - y*z + log(1+exp(-|z|))
                    const double z = f[i];
                    loss += std::max(z, 0.0) - static_cast<double>(y[i]) * z +
                            std::log1p(std::exp(-std::abs(z)));
                }
                loss_trace->push_back(loss / static_cast<double>(n));
            }
        }
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) {
            double f = f0_;
            for (const GradientTree& t : trees_) f += shrinkage_ * t.value_for(row);
            out.push_back(sigmoid(f));
        }
        return out;
    }

    std::size_t n_features() const override { return n_features_; }

private:
    std::vector<GradientTree> trees_;
    double f0_ = 0.0;
    double shrinkage_;
    std::size_t n_features_ = 0;
};

}  // namespace gaze::models
