#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/models/common.hpp
// BRIEF: Model roster, per-family hyperparameter defaults, and the trained
//        model interface (continuous scores; hard labels come from the
//        family's decision threshold).
// =============================================================================

namespace gaze::models {

enum class Family { LR, SVM, KNN, DecisionTree, RandomForest, GradBoost, MLP };

inline constexpr Family kAllFamilies[] = {Family::LR,           Family::SVM,
                                          Family::KNN,          Family::DecisionTree,
                                          Family::RandomForest, Family::GradBoost,
                                          Family::MLP};

inline std::string to_string(Family f) {
    switch (f) {
        case Family::LR: return "lr";
        case Family::SVM: return "svm";
        case Family::KNN: return "knn";
        case Family::DecisionTree: return "decision_tree";
        case Family::RandomForest: return "random_forest";
        case Family::GradBoost: return "grad_boost";
        case Family::MLP: return "mlp";
    }
    throw Error("unreachable family enum");
}

inline std::string display_name(Family f) {
    switch (f) {
        case Family::LR: return "LR";
        case Family::SVM: return "SVM";
        case Family::KNN: return "KNN";
        case Family::DecisionTree: return "Decision Tree";
        case Family::RandomForest: return "Random Forest";
        case Family::GradBoost: return "GradBoost";
        case Family::MLP: return "MLP";
    }
    throw Error("unreachable family enum");
}

inline Family family_from_string(const std::string& s) {
    for (Family f : kAllFamilies) {
        if (to_string(f) == s) return f;
    }
    throw ConfigError("unknown model family \"" + s + "\"");
}

/// Margin/distance/gradient models train on z-scored features; tree models
/// take raw imputed values (they are scale-invariant).
inline bool needs_standardization(Family f) {
    switch (f) {
        case Family::LR:
        case Family::SVM:
        case Family::KNN:
        case Family::MLP: return true;
        case Family::DecisionTree:
        case Family::RandomForest:
        case Family::GradBoost: return false;
    }
    throw Error("unreachable family enum");
}

struct ModelSpec {
    Family family = Family::LR;
    std::uint64_t seed = 0;

    // LR
    double lr_learning_rate = 0.1;
    std::size_t lr_iterations = 1000;
    double lr_l2 = 1e-4;
    // SVM
    double svm_c = 1.0;
    double svm_tol = 1e-3;
    std::size_t svm_max_sweeps = 200;
    // KNN
    std::size_t knn_k = 5;
    // RandomForest
    std::size_t rf_trees = 300;
    std::size_t rf_features_per_split = 8;  // ceil(sqrt(63))
    // GradBoost
    std::size_t gb_rounds = 200;
    std::size_t gb_depth = 3;
    double gb_learning_rate = 0.1;
    double gb_subsample = 0.8;
    // MLP: 63 -> 128 -> 32 -> 1
    std::vector<std::size_t> mlp_hidden = {128, 32};
    double mlp_learning_rate = 1e-3;
    std::size_t mlp_epochs = 200;
    std::size_t mlp_batch = 32;
};

using Matrix = std::vector<std::vector<double>>;

class Model {
public:
    virtual ~Model() = default;

    /// Continuous score per row, higher = more positive-class.
    virtual std::vector<double> predict_score(const Matrix& X) const = 0;

    /// Hard-label cut on the score (0.5 for probability outputs, 0 for margins).
    virtual double decision_threshold() const { return 0.5; }

    virtual std::size_t n_features() const = 0;

protected:
    void check_features(const Matrix& X) const {
        for (const auto& row : X) {
            if (row.size() != n_features()) {
                throw DataError("feature-count mismatch: model expects " +
                                std::to_string(n_features()) + ", got " +
                                std::to_string(row.size()));
            }
        }
    }
};

inline void check_training_inputs(const Matrix& X, const std::vector<int>& y) {
    if (X.empty() || X.size() != y.size()) throw DataError("training inputs are empty or misaligned");
    bool pos = false, neg = false;
    for (int v : y) {
        pos |= v == 1;
        neg |= v == 0;
    }
    if (!pos || !neg) throw DataError("training labels contain a single class");
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace gaze::models
