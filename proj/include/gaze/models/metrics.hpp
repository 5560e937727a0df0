#pragma once

#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/metrics.hpp
// BRIEF: Rank-based AUC (midranks for tied scores) and the five evaluation
//        metrics: accuracy plus macro-averaged precision/recall/F1 and AUC.
// =============================================================================

namespace gaze::models {

/// Probability that a random positive scores above a random negative; ties
/// count half. An all-tied score vector therefore yields 0.5.
inline double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw DataError("scores and labels are empty or misaligned");
    }
    std::size_t n_pos = 0, n_neg = 0;
    for (int l : labels) (l == 1 ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) throw DataError("AUC needs both classes present");

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t s = i; s <= j; ++s) {
            if (labels[order[s]] == 1) rank_sum_pos += midrank;
        }
        i = j + 1;
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;  // macro
    double recall = 0.0;     // macro
    double f1 = 0.0;         // macro
    double auc = 0.0;
};

/// `predictions` are hard labels from thresholding; `scores` feed the AUC.
inline Metrics compute_metrics(const std::vector<int>& predictions,
                               const std::vector<double>& scores, const std::vector<int>& labels) {
    if (predictions.size() != labels.size() || predictions.empty()) {
        throw DataError("predictions and labels are empty or misaligned");
    }
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            (predictions[i] == 1 ? tp : fn) += 1;
        } else {
            (predictions[i] == 1 ? fp : tn) += 1;
        }
    }
    auto safe_div = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

    // Per-class one-vs-rest, then macro average over {positive, negative}.
    const double prec_pos = safe_div(tp, tp + fp);
    const double rec_pos = safe_div(tp, tp + fn);
    const double prec_neg = safe_div(tn, tn + fn);
    const double rec_neg = safe_div(tn, tn + fp);
    const double f1_pos = safe_div(2.0 * prec_pos * rec_pos, prec_pos + rec_pos);
    const double f1_neg = safe_div(2.0 * prec_neg * rec_neg, prec_neg + rec_neg);

    Metrics m;
    m.accuracy = (tp + tn) / static_cast<double>(labels.size());
    m.precision = 0.5 * (prec_pos + prec_neg);
    m.recall = 0.5 * (rec_pos + rec_neg);
    m.f1 = 0.5 * (f1_pos + f1_neg);
    m.auc = roc_auc(scores, labels);
    return m;
}

}  // namespace gaze::models
