#pragma once
// Stochastic learner simulation.
//
// simulate_session is the ten-task loop from the case study, unchanged:
// engagement ~ U[0,1), reward ~ U[0,10), difficulty from case_difficulty,
// success when a third uniform draw falls below 1 - difficulty.
//
// run_timeline drives a single user through step_user. Each step consumes
// exactly one uniform draw (the success draw); nothing else is random, so a
// trace is a function of the seed and the configuration only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gamify/error.hpp"
#include "gamify/models.hpp"
#include "gamify/rng.hpp"

namespace gamify {

struct SessionStep {
    std::int64_t task_index = 0;  // 1-based
    double engagement = 0.0;
    double reward = 0.0;
    double difficulty = 0.0;
    bool success = false;

    friend bool operator==(const SessionStep&, const SessionStep&) = default;
};

template <UniformSource G>
std::vector<SessionStep> simulate_session(std::int64_t num_tasks, G& rng) {
    detail::require(num_tasks >= 1, "simulate_session: num_tasks must be >= 1");
    std::vector<SessionStep> out;
    out.reserve(static_cast<std::size_t>(num_tasks));
    for (std::int64_t task = 0; task < num_tasks; ++task) {
        SessionStep s;
        s.task_index = task + 1;
        s.engagement = rng.uniform();
        s.reward = rng.uniform() * 10.0;
        s.difficulty = case_difficulty(s.engagement, s.reward);
        s.success = rng.uniform() < (1.0 - s.difficulty);
        out.push_back(s);
    }
    return out;
}

inline std::vector<SessionStep> simulate_session(std::int64_t num_tasks, std::uint64_t seed) {
    Rng rng(seed);
    return simulate_session(num_tasks, rng);
}

struct ModelProfile {
    RewardFrequencyParams reward_frequency{};
    DiminishingRewardParams diminishing{};
    LogisticDifficultyParams difficulty{};
    FlowParams flow{};
    RetentionParams retention{};
    EngagementDecayParams decay{};
};

inline bool valid(const ModelProfile& p) noexcept {
    return valid(p.reward_frequency) && valid(p.diminishing) && valid(p.difficulty) &&
           valid(p.flow) && valid(p.retention) && valid(p.decay);
}

struct TimelineConfig {
    std::int64_t steps = 1;
    ModelProfile params{};
    double skill_gain = 0.05;
    double engagement_boost = 0.0;
    // 0 switches at-risk detection off entirely.
    double intervention_threshold = 0.0;
    double intervention_reward_multiplier = 1.0;
    std::uint64_t seed = 0;
};

inline bool valid(const TimelineConfig& c) noexcept {
    return c.steps >= 1 && valid(c.params) && std::isfinite(c.skill_gain) && c.skill_gain > 0.0 &&
           c.skill_gain < 1.0 && std::isfinite(c.engagement_boost) && c.engagement_boost >= 0.0 &&
           std::isfinite(c.intervention_threshold) && c.intervention_threshold >= 0.0 &&
           c.intervention_threshold < 1.0 && std::isfinite(c.intervention_reward_multiplier) &&
           c.intervention_reward_multiplier >= 1.0;
}

struct UserState {
    double engagement = 0.0;
    double skill = 0.0;
    double cumulative_reward = 0.0;
    std::int64_t interactions = 0;
    std::int64_t time = 0;
    // Multiplier for the next granted reward; set by apply_intervention.
    double pending_reward_multiplier = 1.0;

    friend bool operator==(const UserState&, const UserState&) = default;
};

inline bool valid(const UserState& s) noexcept {
    return std::isfinite(s.engagement) && s.engagement >= 0.0 && s.engagement <= 1.0 &&
           std::isfinite(s.skill) && s.skill >= 0.0 && s.skill <= 1.0 &&
           std::isfinite(s.cumulative_reward) && s.cumulative_reward >= 0.0 &&
           s.interactions >= 0 && s.time >= 0 && std::isfinite(s.pending_reward_multiplier) &&
           s.pending_reward_multiplier >= 1.0;
}

// Starting state: engagement E0 from the decay record, everything else zero
// apart from the caller's initial skill.
inline UserState initial_state(const TimelineConfig& cfg, double skill) {
    UserState s;
    s.engagement = cfg.params.decay.e0;
    s.skill = skill;
    return s;
}

struct TimelinePoint {
    std::int64_t step = 0;
    double engagement = 0.0;
    double skill = 0.0;
    double reward_granted = 0.0;
    double difficulty = 0.0;
    double retention_prob = 0.0;
    bool success = false;
    bool intervened = false;

    friend bool operator==(const TimelinePoint&, const TimelinePoint&) = default;
};

struct StepOutcome {
    UserState state;
    TimelinePoint point;
};

/// One step of the user dynamics, in this fixed order:
///  1. difficulty from the logistic progression curve at the current skill
///  2. success drawn with probability 1 - difficulty (the only draw)
///  3. on success, skill closes skill_gain of its remaining headroom
///  4. reward from the diminishing schedule at the current interaction
///     count, times any pending intervention multiplier
///  5. engagement decays one time unit, then gains
///     engagement_boost * reward / V0, clamped to [0, 1]
///  6. retention probability from the new engagement and the reward
///  7. interactions and time advance by one
template <UniformSource G>
StepOutcome step_user(const UserState& state, const TimelineConfig& cfg, G& rng) {
    detail::require(valid(cfg), "step_user: invalid timeline config");
    detail::require(valid(state), "step_user: invalid user state");
    const ModelProfile& p = cfg.params;

    StepOutcome out{state, {}};
    UserState& s = out.state;
    TimelinePoint& pt = out.point;

    pt.difficulty = logistic_difficulty(p.difficulty, s.skill);
    pt.success = rng.uniform() < (1.0 - pt.difficulty);
    if (pt.success) s.skill += cfg.skill_gain * (1.0 - s.skill);

    pt.reward_granted =
        diminishing_reward_value(p.diminishing, s.interactions) * s.pending_reward_multiplier;
    s.pending_reward_multiplier = 1.0;
    s.cumulative_reward += pt.reward_granted;

    const double decayed = engagement_decay({s.engagement, p.decay.lambda}, 1.0);
    s.engagement = std::clamp(
        decayed + cfg.engagement_boost * (pt.reward_granted / p.diminishing.v0), 0.0, 1.0);

    pt.retention_prob = retention_probability(p.retention, s.engagement, pt.reward_granted);

    s.interactions += 1;
    s.time += 1;

    pt.step = s.time;
    pt.engagement = s.engagement;
    pt.skill = s.skill;
    return out;
}

inline bool detect_at_risk(const TimelinePoint& point, double threshold) {
    detail::require(std::isfinite(threshold) && threshold > 0.0 && threshold < 1.0,
                    "detect_at_risk: threshold must lie in (0, 1)");
    return point.retention_prob < threshold;
}

// Arms a one-shot reward multiplier for the next step and nudges engagement.
inline UserState apply_intervention(const UserState& state, const TimelineConfig& cfg) {
    UserState s = state;
    s.pending_reward_multiplier = cfg.intervention_reward_multiplier;
    s.engagement = std::clamp(s.engagement + cfg.engagement_boost, 0.0, 1.0);
    return s;
}

inline std::vector<TimelinePoint> run_timeline(const UserState& initial, const TimelineConfig& cfg) {
    detail::require(valid(cfg), "run_timeline: invalid timeline config");
    Rng rng(cfg.seed);
    const bool interventions = cfg.intervention_threshold > 0.0;

    std::vector<TimelinePoint> out;
    out.reserve(static_cast<std::size_t>(cfg.steps));
    UserState state = initial;
    for (std::int64_t i = 0; i < cfg.steps; ++i) {
        auto [next, point] = step_user(state, cfg, rng);
        if (interventions && detect_at_risk(point, cfg.intervention_threshold)) {
            next = apply_intervention(next, cfg);
            point.intervened = true;
        }
        state = next;
        out.push_back(point);
    }
    return out;
}

struct TimelineSummary {
    double final_skill = 0.0;
    double mean_retention_prob = 0.0;
    std::int64_t interventions = 0;
};

inline TimelineSummary summarize(const std::vector<TimelinePoint>& points) {
    TimelineSummary s;
    if (points.empty()) return s;
    double sum = 0.0;
    for (const auto& p : points) {
        sum += p.retention_prob;
        s.interventions += p.intervened;
    }
    s.final_skill = points.back().skill;
    s.mean_retention_prob = sum / static_cast<double>(points.size());
    return s;
}

}  // namespace gamify
