#pragma once

#include <vector>

#include "gaze/models/tree.hpp"

// =============================================================================
// FILE: gaze/models/forest.hpp
// BRIEF: Random forest: bagged Gini trees with a random feature subset per
//        split. Score = mean of per-tree leaf positive fractions. Each tree
//        derives its own RNG stream from (seed, tree index).
// =============================================================================

namespace gaze::models {

class RandomForest final : public Model {
public:
    RandomForest(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec) {
        check_training_inputs(X, y);
        n_features_ = X[0].size();
        trees_.resize(spec.rf_trees);
        const std::size_t n = X.size();
        for (std::size_t t = 0; t < spec.rf_trees; ++t) {
            Rng rng(derive_seed(spec.seed, 0xF03E57ULL, t));
            std::vector<std::size_t> rows(n);
            for (std::size_t i = 0; i < n; ++i) rows[i] = rng.uniform_index(n);
            // A bootstrap draw can miss one class entirely; the leaf fraction
            // then is constant, which is fine for averaging.
            FeatureSampler sampler(n_features_, spec.rf_features_per_split, &rng);
            trees_[t].fit(X, y, rows, sampler);
        }
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) {
            double s = 0.0;
            for (const ClassificationTree& t : trees_) s += t.score_row(row);
            out.push_back(s / static_cast<double>(trees_.size()));
        }
        return out;
    }

    std::size_t n_features() const override { return n_features_; }

private:
    std::vector<ClassificationTree> trees_;
    std::size_t n_features_ = 0;
};

}  // namespace gaze::models
