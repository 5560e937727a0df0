#pragma once

#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/linear.hpp
// BRIEF: Logistic regression: full-batch gradient descent on L2-penalized
//        cross-entropy (penalty on weights, not the bias). Zero-initialized,
//        so training is deterministic independent of the seed.
// =============================================================================

namespace gaze::models {

class LogisticRegression final : public Model {
public:
    LogisticRegression(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec) {
        check_training_inputs(X, y);
        const std::size_t n = X.size();
        const std::size_t d = X[0].size();
        w_.assign(d, 0.0);
        b_ = 0.0;

        std::vector<double> grad_w(d);
        for (std::size_t it = 0; it < spec.lr_iterations; ++it) {
            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double z = b_;
                for (std::size_t j = 0; j < d; ++j) z += w_[j] * X[i][j];
                const double err = sigmoid(z) - static_cast<double>(y[i]);
                for (std::size_t j = 0; j < d; ++j) grad_w[j] += err * X[i][j];
                grad_b += err;
            }
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t j = 0; j < d; ++j) {
                w_[j] -= spec.lr_learning_rate * (grad_w[j] * inv_n + spec.lr_l2 * w_[j]);
            }
            b_ -= spec.lr_learning_rate * grad_b * inv_n;
        }
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) {
            double z = b_;
            for (std::size_t j = 0; j < row.size(); ++j) z += w_[j] * row[j];
            out.push_back(sigmoid(z));
        }
        return out;
    }

    std::size_t n_features() const override { return w_.size(); }

    const std::vector<double>& weights() const { return w_; }
    double bias() const { return b_; }

private:
    std::vector<double> w_;
    double b_ = 0.0;
};

}  // namespace gaze::models
