#pragma once

#include <cmath>
#include <vector>

#include "gaze/models/common.hpp"

// =============================================================================
// FILE: gaze/models/mlp.hpp
// BRIEF: Multilayer perceptron 63 -> 128 -> 32 -> 1: ReLU hidden layers,
//        sigmoid output, binary cross-entropy, Adam (1e-3, 0.9/0.999), batch
//        32. He-style uniform initialization and epoch shuffles are seeded.
//        Parameters are one flat vector so gradients can be checked against
//        finite differences.
// =============================================================================

namespace gaze::models {

class Mlp final : public Model {
public:
    Mlp(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec) {
        check_training_inputs(X, y);
        init_structure(X[0].size(), spec.mlp_hidden);
        Rng rng(derive_seed(spec.seed, 0x317ADULL));
        init_params(rng);
        train(X, y, spec, rng);
    }

    /// Structure-only constructor for gradient checking.
    Mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden, std::uint64_t seed) {
        init_structure(input_dim, hidden);
        Rng rng(seed);
        init_params(rng);
    }

    std::vector<double> predict_score(const Matrix& X) const override {
        check_features(X);
        std::vector<double> out;
        out.reserve(X.size());
        for (const auto& row : X) out.push_back(sigmoid(forward_logit(row)));
        return out;
    }

    std::size_t n_features() const override { return layer_sizes_.front(); }

    const std::vector<double>& parameters() const { return params_; }
    void set_parameters(const std::vector<double>& p) {
        if (p.size() != params_.size()) throw Error("parameter size mismatch");
        params_ = p;
    }

    /// Mean binary cross-entropy over the batch plus its gradient w.r.t. the
    /// flat parameter vector.
    std::pair<double, std::vector<double>> loss_and_grad(const Matrix& X,
                                                         const std::vector<int>& y) const {
        std::vector<double> grad(params_.size(), 0.0);
        double loss = 0.0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            loss += backprop_one(X[i], y[i], grad);
        }
        const double inv = 1.0 / static_cast<double>(X.size());
        loss *= inv;
        for (double& g : grad) g *= inv;
        return {loss, std::move(grad)};
    }

private:
    void init_structure(std::size_t input_dim, const std::vector<std::size_t>& hidden) {
        layer_sizes_ = {input_dim};
        layer_sizes_.insert(layer_sizes_.end(), hidden.begin(), hidden.end());
        layer_sizes_.push_back(1);

        std::size_t total = 0;
        w_off_.clear();
        b_off_.clear();
        for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
            w_off_.push_back(total);
            total += layer_sizes_[l] * layer_sizes_[l + 1];
            b_off_.push_back(total);
            total += layer_sizes_[l + 1];
        }
        params_.assign(total, 0.0);
    }

    void init_params(Rng& rng) {
        for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
            const double limit = std::sqrt(6.0 / static_cast<double>(layer_sizes_[l]));
            const std::size_t count = layer_sizes_[l] * layer_sizes_[l + 1];
            for (std::size_t i = 0; i < count; ++i) {
                params_[w_off_[l] + i] = rng.uniform(-limit, limit);
            }
            // biases start at zero
        }
    }

    double weight(std::size_t l, std::size_t out, std::size_t in) const {
        return params_[w_off_[l] + out * layer_sizes_[l] + in];
    }

    double forward_logit(const std::vector<double>& x) const {
        std::vector<double> act(x);
        for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
            const std::size_t n_out = layer_sizes_[l + 1];
            std::vector<double> next(n_out);
            for (std::size_t o = 0; o < n_out; ++o) {
                double z = params_[b_off_[l] + o];
                for (std::size_t i = 0; i < act.size(); ++i) z += weight(l, o, i) * act[i];
                const bool is_output = l + 2 == layer_sizes_.size();
                next[o] = is_output ? z : std::max(0.0, z);
            }
            act = std::move(next);
        }
        return act[0];
    }

    /// One-sample forward/backward, accumulating into `grad`. Returns the
    /// sample's BCE loss computed on the logit (numerically stable form).
    double backprop_one(const std::vector<double>& x, int label, std::vector<double>& grad) const {
        const std::size_t L = layer_sizes_.size() - 1;  // number of weight layers
        std::vector<std::vector<double>> act(L + 1);
        std::vector<std::vector<double>> pre(L);
        act[0] = x;
        for (std::size_t l = 0; l < L; ++l) {
            const std::size_t n_out = layer_sizes_[l + 1];
            pre[l].assign(n_out, 0.0);
            act[l + 1].assign(n_out, 0.0);
            for (std::size_t o = 0; o < n_out; ++o) {
                double z = params_[b_off_[l] + o];
                for (std::size_t i = 0; i < act[l].size(); ++i) z += weight(l, o, i) * act[l][i];
                pre[l][o] = z;
                act[l + 1][o] = l + 1 == L ? z : std::max(0.0, z);
            }
        }
        const double z = pre[L - 1][0];
        const double yv = static_cast<double>(label);
        const double loss = std::max(z, 0.0) - yv * z + std::log1p(std::exp(-std::abs(z)));

        // delta at the logit: sigmoid(z) - y
        std::vector<double> delta{sigmoid(z) - yv};
        for (std::size_t l = L; l-- > 0;) {
            const std::size_t n_out = layer_sizes_[l + 1];
            const std::size_t n_in = layer_sizes_[l];
            std::vector<double> prev_delta(n_in, 0.0);
            for (std::size_t o = 0; o < n_out; ++o) {
                grad[b_off_[l] + o] += delta[o];
                for (std::size_t i = 0; i < n_in; ++i) {
                    grad[w_off_[l] + o * n_in + i] += delta[o] * act[l][i];
                    prev_delta[i] += delta[o] * params_[w_off_[l] + o * n_in + i];
                }
            }
            if (l > 0) {
                for (std::size_t i = 0; i < n_in; ++i) {
                    if (pre[l - 1][i] <= 0.0) prev_delta[i] = 0.0;  // ReLU gate
                }
            }
            delta = std::move(prev_delta);
        }
        return loss;
    }

    void train(const Matrix& X, const std::vector<int>& y, const ModelSpec& spec, Rng& rng) {
        const std::size_t n = X.size();
        std::vector<double> m(params_.size(), 0.0), v(params_.size(), 0.0);
        constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
        std::size_t t = 0;

        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;

        Matrix batch_x;
        std::vector<int> batch_y;
        for (std::size_t epoch = 0; epoch < spec.mlp_epochs; ++epoch) {
            rng.shuffle(order);
            for (std::size_t start = 0; start < n; start += spec.mlp_batch) {
                const std::size_t stop = std::min(n, start + spec.mlp_batch);
                batch_x.clear();
                batch_y.clear();
                for (std::size_t i = start; i < stop; ++i) {
                    batch_x.push_back(X[order[i]]);
                    batch_y.push_back(y[order[i]]);
                }
                auto [loss, grad] = loss_and_grad(batch_x, batch_y);
                (void)loss;
                ++t;
                const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
                const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
                for (std::size_t p = 0; p < params_.size(); ++p) {
                    m[p] = beta1 * m[p] + (1.0 - beta1) * grad[p];
                    v[p] = beta2 * v[p] + (1.0 - beta2) * grad[p] * grad[p];
                    params_[p] -=
                        spec.mlp_learning_rate * (m[p] / bc1) / (std::sqrt(v[p] / bc2) + eps);
                }
            }
        }
    }

    std::vector<std::size_t> layer_sizes_;
    std::vector<std::size_t> w_off_;
    std::vector<std::size_t> b_off_;
    std::vector<double> params_;
};

}  // namespace gaze::models
