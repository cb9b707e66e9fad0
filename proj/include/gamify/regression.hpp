#pragma once
// Retention prediction pipeline: synthetic data, seeded split, logistic
// regression fitted by full-batch gradient descent, and the usual binary
// classification metrics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gamify/error.hpp"
#include "gamify/models.hpp"
#include "gamify/rng.hpp"

namespace gamify {

struct Sample {
    double engagement = 0.0;
    double reward = 0.0;
    int retention = 0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

using Dataset = std::vector<Sample>;

struct SplitPair {
    Dataset train;
    Dataset test;
    // Source-row indices, in the order the rows appear in train/test.
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

struct FeatureScale {
    double mean = 0.0;
    double std = 1.0;
};

struct RetentionModel {
    std::array<double, 2> weights{0.0, 0.0};  // engagement, reward (scaled space)
    double bias = 0.0;
    std::array<FeatureScale, 2> scaler{};

    // Logit for raw (unscaled) features.
    double logit(double engagement, double reward) const noexcept {
        const double xe = (engagement - scaler[0].mean) / scaler[0].std;
        const double xr = (reward - scaler[1].mean) / scaler[1].std;
        return weights[0] * xe + weights[1] * xr + bias;
    }

    // The fitted model read as retention coefficients: a = w_e, b = w_r,
    // c = -bias, all with respect to standardized features.
    RetentionParams as_retention_params() const noexcept {
        return {weights[0], weights[1], -bias};
    }
};

struct FitConfig {
    double learning_rate = 0.5;
    std::int64_t max_epochs = 5000;
    double convergence_tol = 1e-6;
    // Full-batch descent from zero is deterministic and draws nothing; the
    // seed is carried so a run's configuration is fully recorded.
    std::uint64_t seed = 0;
};

inline bool valid(const FitConfig& c) noexcept {
    return std::isfinite(c.learning_rate) && c.learning_rate > 0.0 && c.max_epochs > 0 &&
           std::isfinite(c.convergence_tol) && c.convergence_tol > 0.0;
}

struct FitResult {
    RetentionModel model;
    std::int64_t epochs_used = 0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    bool converged = false;
};

struct ConfusionMatrix {
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tp = 0;

    std::int64_t total() const noexcept { return tn + fp + fn + tp; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct LossGradient {
    double loss = 0.0;
    std::array<double, 3> gradient{};  // d/dw_engagement, d/dw_reward, d/dbias
};

// Labelling rule of the synthetic generator; the boundary itself is negative.
inline int retention_label(double engagement, double reward) noexcept {
    return engagement * 0.5 + reward * 0.5 > 5.0 ? 1 : 0;
}

/// Draws n engagement values on [0,1), then n reward values on [0,10), in
/// that order, and labels each row with retention_label.
inline Dataset generate_synthetic_dataset(std::size_t n, std::uint64_t seed) {
    detail::require(n >= 1, "generate_synthetic_dataset: n must be >= 1");
    Rng rng(seed);
    Dataset d(n);
    for (auto& row : d) row.engagement = rng.uniform();
    for (auto& row : d) row.reward = rng.uniform() * 10.0;
    for (auto& row : d) row.retention = retention_label(row.engagement, row.reward);
    return d;
}

inline double positive_rate(std::span<const Sample> d) {
    detail::require(!d.empty(), "positive_rate: empty dataset");
    std::int64_t pos = 0;
    for (const auto& row : d) pos += row.retention;
    return static_cast<double>(pos) / static_cast<double>(d.size());
}

inline std::size_t test_count(std::size_t n, double test_fraction) {
    return static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
}

/// Shuffles row indices with Fisher-Yates under `seed`; the first
/// round(test_fraction * N) shuffled rows form the test set.
inline SplitPair train_test_split(std::span<const Sample> d, double test_fraction,
                                  std::uint64_t seed) {
    detail::require(d.size() >= 2, "train_test_split: need at least 2 rows");
    detail::require(std::isfinite(test_fraction) && test_fraction > 0.0 && test_fraction < 1.0,
                    "train_test_split: test_fraction must lie in (0, 1)");
    const std::size_t n_test = test_count(d.size(), test_fraction);
    detail::require(n_test >= 1 && n_test < d.size(),
                    "train_test_split: test_fraction leaves an empty train or test set");

    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(order[i], order[j]);
    }

    SplitPair out;
    out.test_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    out.test.reserve(out.test_indices.size());
    out.train.reserve(out.train_indices.size());
    for (auto i : out.test_indices) out.test.push_back(d[i]);
    for (auto i : out.train_indices) out.train.push_back(d[i]);
    return out;
}

inline constexpr double kLogClamp = 1e-12;

/// Mean negative log-likelihood and its gradient with respect to
/// (w_engagement, w_reward, bias). Features pass through the model's scaler.
inline LossGradient loss_and_gradient(const RetentionModel& m, std::span<const Sample> d) {
    detail::require(!d.empty(), "loss_and_gradient: empty dataset");
    LossGradient out;
    for (const auto& row : d) {
        const double xe = (row.engagement - m.scaler[0].mean) / m.scaler[0].std;
        const double xr = (row.reward - m.scaler[1].mean) / m.scaler[1].std;
        const double p = sigmoid(m.weights[0] * xe + m.weights[1] * xr + m.bias);
        const double y = static_cast<double>(row.retention);
        const double pc = std::clamp(p, kLogClamp, 1.0 - kLogClamp);
        out.loss -= y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc);
        const double r = p - y;
        out.gradient[0] += r * xe;
        out.gradient[1] += r * xr;
        out.gradient[2] += r;
    }
    const double inv_n = 1.0 / static_cast<double>(d.size());
    out.loss *= inv_n;
    for (auto& g : out.gradient) g *= inv_n;
    return out;
}

// Population mean/std per feature. A constant feature keeps std = 1 so the
// scaled column is all zeros rather than undefined.
inline std::array<FeatureScale, 2> fit_scaler(std::span<const Sample> d) {
    std::array<double, 2> sum{}, sq{};
    for (const auto& row : d) {
        sum[0] += row.engagement;
        sum[1] += row.reward;
    }
    const double n = static_cast<double>(d.size());
    std::array<FeatureScale, 2> s;
    s[0].mean = sum[0] / n;
    s[1].mean = sum[1] / n;
    for (const auto& row : d) {
        sq[0] += (row.engagement - s[0].mean) * (row.engagement - s[0].mean);
        sq[1] += (row.reward - s[1].mean) * (row.reward - s[1].mean);
    }
    for (int f = 0; f < 2; ++f) {
        const double sd = std::sqrt(sq[f] / n);
        s[f].std = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
    }
    return s;
}

inline FitResult fit_logistic(std::span<const Sample> train, const FitConfig& cfg) {
    detail::require(valid(cfg), "fit_logistic: invalid fit config");
    if (train.empty()) throw FitError("fit_logistic: empty training set");
    bool has0 = false, has1 = false;
    for (const auto& row : train) {
        detail::require(std::isfinite(row.engagement) && std::isfinite(row.reward),
                        "fit_logistic: non-finite feature");
        detail::require(row.retention == 0 || row.retention == 1, "fit_logistic: label not 0/1");
        (row.retention == 1 ? has1 : has0) = true;
    }
    if (!(has0 && has1)) {
        throw FitError("fit_logistic: training set contains a single class");
    }

    FitResult res;
    res.model.scaler = fit_scaler(train);

    LossGradient lg = loss_and_gradient(res.model, train);
    res.initial_loss = lg.loss;
    std::int64_t epoch = 0;
    for (; epoch < cfg.max_epochs; ++epoch) {
        const auto& g = lg.gradient;
        if (std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]) < cfg.convergence_tol) {
            res.converged = true;
            break;
        }
        res.model.weights[0] -= cfg.learning_rate * g[0];
        res.model.weights[1] -= cfg.learning_rate * g[1];
        res.model.bias -= cfg.learning_rate * g[2];
        lg = loss_and_gradient(res.model, train);
    }
    res.epochs_used = epoch;
    res.final_loss = lg.loss;
    return res;
}

inline double predict_proba(const RetentionModel& m, double engagement, double reward) {
    detail::require(std::isfinite(engagement) && std::isfinite(reward),
                    "predict_proba: non-finite input");
    return sigmoid(m.logit(engagement, reward));
}

inline int predict_label(const RetentionModel& m, double engagement, double reward,
                         double threshold = 0.5) {
    detail::require(std::isfinite(threshold) && threshold > 0.0 && threshold < 1.0,
                    "predict_label: threshold must lie in (0, 1)");
    return predict_proba(m, engagement, reward) >= threshold ? 1 : 0;
}

inline std::vector<int> predict_labels(const RetentionModel& m, std::span<const Sample> d,
                                       double threshold = 0.5) {
    std::vector<int> out;
    out.reserve(d.size());
    for (const auto& row : d) out.push_back(predict_label(m, row.engagement, row.reward, threshold));
    return out;
}

inline std::vector<int> labels_of(std::span<const Sample> d) {
    std::vector<int> out;
    out.reserve(d.size());
    for (const auto& row : d) out.push_back(row.retention);
    return out;
}

inline double accuracy(std::span<const int> predictions, std::span<const int> labels) {
    detail::require(predictions.size() == labels.size(), "accuracy: length mismatch");
    detail::require(!labels.empty(), "accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) hits += predictions[i] == labels[i];
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

// Rows are the true label, columns the predicted label, classes ordered (0, 1).
inline ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels) {
    detail::require(predictions.size() == labels.size(), "confusion: length mismatch");
    detail::require(!labels.empty(), "confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i], p = predictions[i];
        detail::require((y == 0 || y == 1) && (p == 0 || p == 1), "confusion: labels must be 0/1");
        if (y == 0) {
            (p == 0 ? cm.tn : cm.fp) += 1;
        } else {
            (p == 0 ? cm.fn : cm.tp) += 1;
        }
    }
    return cm;
}

}  // namespace gamify
