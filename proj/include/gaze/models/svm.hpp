#pragma once

#include <cmath>
#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/svm.hpp
// BRIEF: RBF-kernel SVM trained by sequential minimal optimization. Gamma
//        follows the scale heuristic 1/(n_features * mean feature variance).
//        Scores are signed margins; the decision threshold is 0.
// =============================================================================

namespace gaze::models {

class SvmRbf final : public Model {
public:
    SvmRbf(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec)
        : X_(X), C_(spec.svm_c), tol_(spec.svm_tol) {
        check_training_inputs(X, y);
        const std::size_t n = X.size();
        const std::size_t d = X[0].size();
        y_.resize(n);
        for (std::size_t i = 0; i < n; ++i) y_[i] = y[i] == 1 ? 1.0 : -1.0;

        // gamma = 1 / (d * mean per-feature variance), with a unit fallback
        // for constant inputs.
        double mean_var = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += X[i][j];
            mean /= static_cast<double>(n);
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v = X[i][j] - mean;
                ss += v * v;
            }
            mean_var += ss / static_cast<double>(n);
        }
        mean_var /= static_cast<double>(d);
        gamma_ = mean_var > 0.0 ? 1.0 / (static_cast<double>(d) * mean_var) : 1.0;

        // Cached kernel matrix; training sets here are a few hundred rows.
        kernel_.assign(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t f = 0; f < d; ++f) {
                    const double diff = X[i][f] - X[j][f];
                    s += diff * diff;
                }
                kernel_[i][j] = kernel_[j][i] = std::exp(-gamma_ * s);
            }
        }

        alpha_.assign(n, 0.0);
        b_ = 0.0;
        smo(spec.svm_max_sweeps);
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) {
            double f = b_;
            for (std::size_t i = 0; i < X_.size(); ++i) {
                if (alpha_[i] == 0.0) continue;
                double s = 0.0;
                for (std::size_t j = 0; j < row.size(); ++j) {
                    const double diff = X_[i][j] - row[j];
                    s += diff * diff;
                }
                f += alpha_[i] * y_[i] * std::exp(-gamma_ * s);
            }
            out.push_back(f);
        }
        return out;
    }

    double decision_threshold() const override { return 0.0; }
    std::size_t n_features() const override { return X_[0].size(); }
    double gamma() const { return gamma_; }

private:
    double decision(std::size_t i) const {
        double f = b_;
        for (std::size_t j = 0; j < alpha_.size(); ++j) {
            if (alpha_[j] != 0.0) f += alpha_[j] * y_[j] * kernel_[j][i];
        }
        return f;
    }

    bool try_step(std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double Ei = decision(i) - y_[i];
        const double Ej = decision(j) - y_[j];
        const double ai_old = alpha_[i];
        const double aj_old = alpha_[j];

        double lo, hi;
        if (y_[i] != y_[j]) {
            lo = std::max(0.0, aj_old - ai_old);
            hi = std::min(C_, C_ + aj_old - ai_old);
        } else {
            lo = std::max(0.0, ai_old + aj_old - C_);
            hi = std::min(C_, ai_old + aj_old);
        }
        if (lo >= hi) return false;

        const double eta = 2.0 * kernel_[i][j] - kernel_[i][i] - kernel_[j][j];
        if (eta >= 0.0) return false;

        double aj = aj_old - y_[j] * (Ei - Ej) / eta;
        aj = std::clamp(aj, lo, hi);
        if (std::abs(aj - aj_old) < 1e-5) return false;
        const double ai = ai_old + y_[i] * y_[j] * (aj_old - aj);

        alpha_[i] = ai;
        alpha_[j] = aj;

        const double b1 = b_ - Ei - y_[i] * (ai - ai_old) * kernel_[i][i] -
                          y_[j] * (aj - aj_old) * kernel_[i][j];
        const double b2 = b_ - Ej - y_[i] * (ai - ai_old) * kernel_[i][j] -
                          y_[j] * (aj - aj_old) * kernel_[j][j];
        if (ai > 0.0 && ai < C_) {
            b_ = b1;
        } else if (aj > 0.0 && aj < C_) {
            b_ = b2;
        } else {
            b_ = 0.5 * (b1 + b2);
        }
        return true;
    }

    /// Examines one multiplier: on a KKT violation, tries the partner with the
    /// largest |Ei - Ej| first (ties toward the lower index), then the rest.
    bool examine(std::size_t i) {
        const std::size_t n = alpha_.size();
        const double Ei = decision(i) - y_[i];
        const double r = Ei * y_[i];
        if (!((r < -tol_ && alpha_[i] < C_) || (r > tol_ && alpha_[i] > 0.0))) return false;

        std::size_t best = n;
        double best_gap = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || (alpha_[j] <= 0.0 || alpha_[j] >= C_)) continue;
            const double gap = std::abs(Ei - (decision(j) - y_[j]));
            if (gap > best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        if (best < n && try_step(i, best)) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (try_step(i, j)) return true;
        }
        return false;
    }

    void smo(std::size_t max_sweeps) {
        const std::size_t n = alpha_.size();
        bool examine_all = true;
        for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
            std::size_t changed = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!examine_all && (alpha_[i] <= 0.0 || alpha_[i] >= C_)) continue;
                changed += examine(i);
            }
            if (examine_all) {
                if (changed == 0) break;
                examine_all = false;
            } else if (changed == 0) {
                examine_all = true;
            }
        }
    }

    Matrix X_;
    std::vector<double> y_;  // +-1
    std::vector<std::vector<double>> kernel_;
    std::vector<double> alpha_;
    double b_ = 0.0;
    double gamma_ = 1.0;
    double C_;
    double tol_;
};

}  // namespace gaze::models
