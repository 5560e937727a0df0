#pragma once

#include <algorithm>
#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/knn.hpp
// BRIEF: K-nearest-neighbor classifier, Euclidean metric, uniform weights.
//        Score = fraction of positive labels among the k nearest training
//        rows; distance ties resolve toward the lower training index.
// =============================================================================

namespace gaze::models {

class Knn final : public Model {
public:
    Knn(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec)
        : X_(X), y_(y), k_(std::min(spec.knn_k, X.size())) {
        check_training_inputs(X, y);
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        std::vector<std::pair<double, std::size_t>> d(X_.size());
        for (const auto& row : X) {
            for (std::size_t i = 0; i < X_.size(); ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < row.size(); ++j) {
                    const double diff = X_[i][j] - row[j];
                    s += diff * diff;
                }
                d[i] = {s, i};
            }
            std::partial_sort(d.begin(), d.begin() + k_, d.end());
            double pos = 0.0;
            for (std::size_t i = 0; i < k_; ++i) pos += y_[d[i].second] == 1 ? 1.0 : 0.0;
            out.push_back(pos / static_cast<double>(k_));
        }
        return out;
    }

    std::size_t n_features() const override { return X_[0].size(); }

private:
    Matrix X_;
    std::vector<int> y_;
    std::size_t k_;
};

}  // namespace gaze::models
