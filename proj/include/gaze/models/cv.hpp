#pragma once

#include <chrono>
#include <memory>
#include <vector>

#include <json.hpp>

#include "gaze/features.hpp"
#include "gaze/models/forest.hpp"
#include "gaze/models/gboost.hpp"
#include "gaze/models/knn.hpp"
#include "gaze/models/linear.hpp"
#include "gaze/models/metrics.hpp"
#include "gaze/models/mlp.hpp"
#include "gaze/models/svm.hpp"
#include "gaze/models/tree.hpp"

// =============================================================================
// FILE: gaze/models/cv.hpp
// BRIEF: Stratified 5-fold cross-validation repeated over 5 seeded runs
//        (shuffle seed = run index). The standardizer is fit on each training
//        fold only; reported metrics are means over all 25 fold evaluations.
// =============================================================================

namespace gaze::models {

inline std::unique_ptr<Model> train(const ModelSpec& spec, const Matrix& X,
                                    const std::vector<int>& y) {
    switch (spec.family) {
        case Family::LR: return std::make_unique<LogisticRegression>(X, y, spec);
        case Family::SVM: return std::make_unique<SvmRbf>(X, y, spec);
        case Family::KNN: return std::make_unique<Knn>(X, y, spec);
        case Family::DecisionTree: return std::make_unique<DecisionTree>(X, y, spec);
        case Family::RandomForest: return std::make_unique<RandomForest>(X, y, spec);
        case Family::GradBoost: return std::make_unique<GradBoost>(X, y, spec);
        case Family::MLP: return std::make_unique<Mlp>(X, y, spec);
    }
    throw Error("unreachable family enum");
}

struct ModelReport {
    Family family = Family::LR;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auc = 0.0;
    double inference_time_per_sample = 0.0;  // seconds
    std::vector<Metrics> per_fold;
};

/// Caption-style timing bucket for the report table.
inline std::string timing_bucket(double seconds) {
    if (seconds < 1e-4) return "<0.0001s";
    if (seconds < 1e-3) return "<0.001s";
    if (seconds < 1e-2) return "<0.01s";
    if (seconds < 1e-1) return "<0.1s";
    return ">=0.1s";
}

/// Fold id per row: classes are shuffled separately (seed = run index) and
/// dealt round-robin, so every fold holds both classes whenever each class
/// has at least n_folds rows. Depends only on labels, never on values.
inline std::vector<int> stratified_fold_of(const std::vector<int>& labels, std::size_t n_folds,
                                           std::uint64_t run_seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(i);
    Rng rng(run_seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    std::vector<int> fold_of(labels.size(), 0);
    for (std::size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = static_cast<int>(i % n_folds);
    for (std::size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = static_cast<int>(i % n_folds);
    return fold_of;
}

inline ModelReport cross_validate(const ModelSpec& spec, const features::FeatureMatrix& m,
                                  std::size_t n_folds = 5, std::size_t n_runs = 5) {
    const std::size_t n = m.n_rows();
    std::size_t n_pos = 0, n_neg = 0;
    for (int l : m.labels) (l == 1 ? n_pos : n_neg) += 1;
    if (n_pos < n_folds || n_neg < n_folds) {
        throw DataError("cross-validation needs at least " + std::to_string(n_folds) +
                        " rows per class");
    }

    ModelReport report;
    report.family = spec.family;
    double total_time = 0.0;
    std::size_t total_scored = 0;

    for (std::size_t run = 0; run < n_runs; ++run) {
        const std::vector<int> fold_of = stratified_fold_of(m.labels, n_folds, run);

        for (std::size_t fold = 0; fold < n_folds; ++fold) {
            std::vector<features::Row> train_rows, test_rows;
            std::vector<int> train_y, test_y;
            for (std::size_t i = 0; i < n; ++i) {
                if (fold_of[i] == static_cast<int>(fold)) {
                    test_rows.push_back(m.rows[i]);
                    test_y.push_back(m.labels[i]);
                } else {
                    train_rows.push_back(m.rows[i]);
                    train_y.push_back(m.labels[i]);
                }
            }

            features::Standardizer std_;
            std_.fit(train_rows, needs_standardization(spec.family));
            const Matrix X_train = std_.transform(train_rows);
            const Matrix X_test = std_.transform(test_rows);

            ModelSpec fold_spec = spec;
            fold_spec.seed = derive_seed(spec.seed, run, fold);
            const std::unique_ptr<Model> model = train(fold_spec, X_train, train_y);

            const auto t0 = std::chrono::steady_clock::now();
            const std::vector<double> scores = model->predict_score(X_test);
            const auto t1 = std::chrono::steady_clock::now();
            total_time += std::chrono::duration<double>(t1 - t0).count();
            total_scored += scores.size();

            std::vector<int> pred(scores.size());
            for (std::size_t i = 0; i < scores.size(); ++i) {
                pred[i] = scores[i] >= model->decision_threshold() ? 1 : 0;
            }
            report.per_fold.push_back(compute_metrics(pred, scores, test_y));
        }
    }

    const double folds = static_cast<double>(report.per_fold.size());
    for (const Metrics& f : report.per_fold) {
        report.accuracy += f.accuracy / folds;
        report.precision += f.precision / folds;
        report.recall += f.recall / folds;
        report.f1 += f.f1 / folds;
        report.auc += f.auc / folds;
    }
    report.inference_time_per_sample = total_scored > 0 ? total_time / total_scored : 0.0;
    return report;
}

inline nlohmann::json to_json(const ModelReport& r) {
    nlohmann::json folds = nlohmann::json::array();
    for (const Metrics& f : r.per_fold) {
        folds.push_back({{"accuracy", f.accuracy},
                         {"precision", f.precision},
                         {"recall", f.recall},
                         {"f1", f.f1},
                         {"auc", f.auc}});
    }
    return nlohmann::json{{"model", to_string(r.family)},
                          {"accuracy", r.accuracy},
                          {"precision", r.precision},
                          {"recall", r.recall},
                          {"f1", r.f1},
                          {"auc", r.auc},
                          {"timing", {{"inference_time_per_sample", r.inference_time_per_sample},
                                      {"bucket", timing_bucket(r.inference_time_per_sample)}}},
                          {"per_fold", folds}};
}

/// Report table shaped like the benchmark summary: one row per model with the
/// five metrics and the inference-time bucket.
inline std::string report_markdown(const std::vector<ModelReport>& reports) {
    std::ostringstream out;
    out << "| Model | Accuracy | Precision | Recall | F1-score | AUC | Inference Time |\n";
    out << "|---|---|---|---|---|---|---|\n";
    char buf[64];
    for (const ModelReport& r : reports) {
        out << "| " << display_name(r.family) << " |";
        for (double v : {r.accuracy, r.precision, r.recall, r.f1, r.auc}) {
            std::snprintf(buf, sizeof(buf), " %.3f |", v);
            out << buf;
        }
        out << ' ' << timing_bucket(r.inference_time_per_sample) << " |\n";
    }
    return out.str();
}

}  // namespace gaze::models
