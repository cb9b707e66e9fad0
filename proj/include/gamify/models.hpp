#pragma once
// Closed-form engagement, reward and difficulty models.
//
//   reward frequency      R(t) = R0 * exp(alpha * t)
//   diminishing reward    V(n) = V0 / (1 + beta * n)
//   logistic difficulty   D(x) = Dmax / (1 + exp(-gamma * (x - x0)))
//   flow challenge        C(s) = s + k
//   retention probability P    = 1 / (1 + exp(-(a*E + b*R - c)))
//   engagement decay      E(t) = E0 * exp(-lambda * t)
//
// Every function is pure. Parameter records validate on construction through
// the make_* helpers; the operations re-check only their own inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "gamify/error.hpp"

namespace gamify {

struct RewardFrequencyParams {
    double r0;     // rewards per unit time at t = 0
    double alpha;  // growth exponent per unit time
};

struct DiminishingRewardParams {
    double v0;    // reward value of the first interaction
    double beta;  // per-interaction diminishing rate
};

struct LogisticDifficultyParams {
    double d_max;  // upper asymptote
    double gamma;  // progression rate per skill unit
    double x0;     // skill level at the midpoint
};

struct FlowParams {
    double k;  // challenge-over-skill offset
};

struct RetentionParams {
    double a;  // engagement coefficient
    double b;  // reward coefficient
    double c;  // threshold
};

struct EngagementDecayParams {
    double e0;      // initial engagement in [0, 1]
    double lambda;  // decay constant per unit time
};

namespace detail {

inline bool finite(double x) noexcept { return std::isfinite(x); }

inline void require_finite(double x, const char* op, const char* name) {
    require(finite(x), std::string(op) + ": " + name + " must be finite");
}

}  // namespace detail

// Parameter invariants, shared by the operations and by config validation.
inline bool valid(const RewardFrequencyParams& p) noexcept {
    return detail::finite(p.r0) && p.r0 > 0.0 && detail::finite(p.alpha);
}
inline bool valid(const DiminishingRewardParams& p) noexcept {
    return detail::finite(p.v0) && p.v0 > 0.0 && detail::finite(p.beta) && p.beta >= 0.0;
}
inline bool valid(const LogisticDifficultyParams& p) noexcept {
    return detail::finite(p.d_max) && p.d_max > 0.0 && detail::finite(p.gamma) && p.gamma > 0.0 &&
           detail::finite(p.x0);
}
inline bool valid(const FlowParams& p) noexcept { return detail::finite(p.k); }
inline bool valid(const RetentionParams& p) noexcept {
    return detail::finite(p.a) && detail::finite(p.b) && detail::finite(p.c);
}
inline bool valid(const EngagementDecayParams& p) noexcept {
    return detail::finite(p.e0) && p.e0 >= 0.0 && p.e0 <= 1.0 && detail::finite(p.lambda) &&
           p.lambda >= 0.0;
}

/// Logistic function, evaluated on the branch that never exponentiates a
/// positive argument, so it stays finite for any finite z.
///
/// The result is kept inside the open interval (0, 1): past |z| ~ 37 the
/// exact value is not representable next to 1, and past z ~ -745 it
/// underflows, so saturated outputs are pinned to the nearest interior double.
inline double sigmoid(double z) {
    detail::require_finite(z, "sigmoid", "z");
    constexpr double lowest = std::numeric_limits<double>::denorm_min();
    constexpr double highest = 1.0 - 0x1.0p-53;
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double ez = std::exp(z);
        p = ez / (1.0 + ez);
    }
    return std::clamp(p, lowest, highest);
}

inline double reward_frequency(const RewardFrequencyParams& p, double t) {
    detail::require(valid(p), "reward_frequency: invalid parameters");
    detail::require_finite(t, "reward_frequency", "t");
    detail::require(t >= 0.0, "reward_frequency: t must be >= 0");
    return p.r0 * std::exp(p.alpha * t);
}

inline double diminishing_reward_value(const DiminishingRewardParams& p, std::int64_t n) {
    detail::require(valid(p), "diminishing_reward_value: invalid parameters");
    detail::require(n >= 0, "diminishing_reward_value: n must be >= 0");
    return p.v0 / (1.0 + p.beta * static_cast<double>(n));
}

inline double logistic_difficulty(const LogisticDifficultyParams& p, double x) {
    detail::require(valid(p), "logistic_difficulty: invalid parameters");
    detail::require_finite(x, "logistic_difficulty", "x");
    return p.d_max * sigmoid(p.gamma * (x - p.x0));
}

inline double flow_challenge(double skill, const FlowParams& p) {
    detail::require(valid(p), "flow_challenge: invalid parameters");
    detail::require_finite(skill, "flow_challenge", "skill");
    return skill + p.k;
}

inline double retention_probability(const RetentionParams& p, double engagement, double reward) {
    detail::require(valid(p), "retention_probability: invalid parameters");
    detail::require_finite(engagement, "retention_probability", "engagement");
    detail::require_finite(reward, "retention_probability", "reward");
    return sigmoid(p.a * engagement + p.b * reward - p.c);
}

inline double engagement_decay(const EngagementDecayParams& p, double t) {
    detail::require(valid(p), "engagement_decay: invalid parameters");
    detail::require_finite(t, "engagement_decay", "t");
    detail::require(t >= 0.0, "engagement_decay: t must be >= 0");
    return p.e0 * std::exp(-p.lambda * t);
}

// Difficulty rule of the ten-task learning-session loop.
inline double case_difficulty(double engagement, double reward) {
    detail::require_finite(engagement, "case_difficulty", "engagement");
    detail::require_finite(reward, "case_difficulty", "reward");
    return sigmoid(engagement + reward - 1.0);
}

}  // namespace gamify
