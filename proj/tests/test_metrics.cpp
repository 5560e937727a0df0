#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gaze/models/metrics.hpp"
#include "gaze/stats.hpp"

using namespace gaze;
using namespace gaze::models;

TEST_CASE("worked AUC example: 3 of 4 pairs ordered correctly") {
    const double auc = roc_auc({0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
    CHECK_THAT(auc, Catch::Matchers::WithinRel(0.75, 1e-12));
}

TEST_CASE("perfect ordering gives AUC 1, constant scores give 0.5") {
    CHECK(roc_auc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == 1.0);
    CHECK(roc_auc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == 0.5);
}

TEST_CASE("random labels give AUC near one half") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> ud(0, 1);
    const std::size_t n = 4000;
    std::vector<double> scores;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        scores.push_back(ud(gen));
        labels.push_back(static_cast<int>(gen() % 2));
    }
    CHECK_THAT(roc_auc(scores, labels), Catch::Matchers::WithinAbs(0.5, 3.0 / std::sqrt(n)));
}

TEST_CASE("AUC is invariant under strictly increasing score transforms") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> ud(0.01, 1);
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 50; ++i) {
        scores.push_back(ud(gen));
        labels.push_back(static_cast<int>(gen() % 2));
    }
    labels[0] = 1;
    labels[1] = 0;
    const double base = roc_auc(scores, labels);
    std::vector<double> logit, scaled;
    for (double s : scores) {
        logit.push_back(std::log(s / (1.0001 - s)));
        scaled.push_back(2000.0 * s - 17.0);
    }
    CHECK(roc_auc(logit, labels) == base);
    CHECK(roc_auc(scaled, labels) == base);
}

TEST_CASE("AUC equals U/(n_pos*n_neg) computed by the stats module") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> ud(0, 1);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> scores;
        std::vector<int> labels;
        const std::size_t n = 6 + gen() % 30;
        std::size_t n_pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            // ties on purpose, quantized scores
            scores.push_back(std::round(ud(gen) * 10.0) / 10.0);
            labels.push_back(static_cast<int>(gen() % 2));
            n_pos += labels.back();
        }
        if (n_pos == 0 || n_pos == n) continue;
        std::vector<double> pos_scores, neg_scores;
        for (std::size_t i = 0; i < n; ++i) {
            (labels[i] == 1 ? pos_scores : neg_scores).push_back(scores[i]);
        }
        const auto u = stats::mann_whitney_u(pos_scores, neg_scores);
        const double expect = u.u / static_cast<double>(pos_scores.size() * neg_scores.size());
        CHECK_THAT(roc_auc(scores, labels), Catch::Matchers::WithinAbs(expect, 1e-12));
    }
}

TEST_CASE("single-class labels are rejected") {
    CHECK_THROWS_AS(roc_auc({0.1, 0.9}, {1, 1}), DataError);
}

TEST_CASE("compute_metrics on the hand confusion matrix") {
    // TP=2, FP=1, FN=1, TN=2
    const std::vector<int> labels = {1, 1, 1, 0, 0, 0};
    const std::vector<int> preds = {1, 1, 0, 1, 0, 0};
    const std::vector<double> scores = {0.9, 0.8, 0.3, 0.7, 0.2, 0.1};
    const Metrics m = compute_metrics(preds, scores, labels);
    CHECK_THAT(m.accuracy, Catch::Matchers::WithinRel(4.0 / 6.0, 1e-12));
    CHECK_THAT(m.precision, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));  // macro
    CHECK_THAT(m.recall, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));
    CHECK_THAT(m.f1, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));
}

TEST_CASE("all-correct predictions give all-ones metrics") {
    const std::vector<int> labels = {1, 0, 1, 0};
    const std::vector<double> scores = {0.9, 0.1, 0.8, 0.2};
    const Metrics m = compute_metrics(labels, scores, labels);
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
    CHECK(m.auc == 1.0);
}
