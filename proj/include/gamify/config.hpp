#pragma once
// Run configuration: one JSON document, one section per parameter record.
//
//   reward_frequency {r0, alpha}     diminishing {v0, beta}
//   difficulty {d_max, gamma, x0}    flow {k}
//   retention {a, b, c}              decay {e0, lambda}
//   dataset {n, test_fraction}
//   fit {learning_rate, max_epochs, convergence_tol}
//   timeline {steps, initial_skill, skill_gain, engagement_boost,
//             intervention_threshold, intervention_reward_multiplier}
//   seeds {data, split, fit, sim}
//   paths {output_dir}
//
// Every field is required. load_config collects all violations before
// failing, each tagged with its dotted field path.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamify/regression.hpp"
#include "gamify/simulator.hpp"

namespace gamify {

struct DatasetSettings {
    std::int64_t n = 1000;
    double test_fraction = 0.2;
};

struct TimelineSettings {
    std::int64_t steps = 100;
    double initial_skill = 0.1;
    double skill_gain = 0.05;
    double engagement_boost = 0.05;
    double intervention_threshold = 0.5;
    double intervention_reward_multiplier = 2.0;
};

struct Seeds {
    std::uint64_t data = 0;
    std::uint64_t split = 42;
    std::uint64_t fit = 0;
    std::uint64_t sim = 0;
};

struct RunConfig {
    ModelProfile params;
    DatasetSettings dataset;
    FitConfig fit;
    TimelineSettings timeline;
    Seeds seeds;
    std::string output_dir;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration:";
        for (const auto& s : v) out += "\n  " + s;
        return out;
    }

    std::vector<std::string> violations_;
};

// Shipped default profile; configs/default.json carries the same document.
inline constexpr const char* kDefaultConfigJson = R"({
  "reward_frequency": { "r0": 1.0, "alpha": 0.05 },
  "diminishing": { "v0": 10.0, "beta": 0.3 },
  "difficulty": { "d_max": 1.0, "gamma": 1.0, "x0": 0.5 },
  "flow": { "k": 0.1 },
  "retention": { "a": 4.0, "b": 0.3, "c": 2.5 },
  "decay": { "e0": 0.8, "lambda": 0.1 },
  "dataset": { "n": 1000, "test_fraction": 0.2 },
  "fit": { "learning_rate": 0.5, "max_epochs": 5000, "convergence_tol": 1e-6 },
  "timeline": {
    "steps": 100,
    "initial_skill": 0.1,
    "skill_gain": 0.05,
    "engagement_boost": 0.05,
    "intervention_threshold": 0.5,
    "intervention_reward_multiplier": 2.0
  },
  "seeds": { "data": 0, "split": 42, "fit": 0, "sim": 7 },
  "paths": { "output_dir": "." }
}
)";

namespace detail {

class ConfigReader {
public:
    explicit ConfigReader(const nlohmann::json& root) : root_(root) {}

    const nlohmann::json* section(const std::string& name,
                                  std::initializer_list<const char*> fields) {
        const auto it = root_.find(name);
        if (it == root_.end()) {
            fail(name, "missing section");
            return nullptr;
        }
        if (!it->is_object()) {
            fail(name, "must be an object");
            return nullptr;
        }
        for (const auto& [key, _] : it->items()) {
            bool known = false;
            for (const char* f : fields) known = known || key == f;
            if (!known) fail(name + "." + key, "unknown field");
        }
        return &*it;
    }

    void real(const nlohmann::json* sec, const std::string& name, const char* field, double& out,
              const std::function<bool(double)>& ok, const char* rule) {
        if (sec == nullptr) return;
        const std::string path = name + "." + field;
        const auto it = sec->find(field);
        if (it == sec->end()) return fail(path, "missing");
        if (!it->is_number()) return fail(path, "must be a number");
        const double v = it->get<double>();
        if (!std::isfinite(v) || !ok(v)) return fail(path, std::string("must be ") + rule);
        out = v;
    }

    void integer(const nlohmann::json* sec, const std::string& name, const char* field,
                 std::int64_t& out, std::int64_t min_value) {
        if (sec == nullptr) return;
        const std::string path = name + "." + field;
        const auto it = sec->find(field);
        if (it == sec->end()) return fail(path, "missing");
        if (!it->is_number_integer()) return fail(path, "must be an integer");
        if (it->is_number_unsigned() &&
            it->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            return fail(path, "is out of range");
        }
        const auto v = it->get<std::int64_t>();
        if (v < min_value) return fail(path, "must be >= " + std::to_string(min_value));
        out = v;
    }

    void seed(const nlohmann::json* sec, const std::string& name, const char* field,
              std::uint64_t& out) {
        if (sec == nullptr) return;
        const std::string path = name + "." + field;
        const auto it = sec->find(field);
        if (it == sec->end()) return fail(path, "missing");
        if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<std::int64_t>() < 0)) {
            return fail(path, "must be a non-negative 64-bit integer");
        }
        out = it->get<std::uint64_t>();
    }

    void string(const nlohmann::json* sec, const std::string& name, const char* field,
                std::string& out) {
        if (sec == nullptr) return;
        const std::string path = name + "." + field;
        const auto it = sec->find(field);
        if (it == sec->end()) return fail(path, "missing");
        if (!it->is_string() || it->get<std::string>().empty()) {
            return fail(path, "must be a non-empty string");
        }
        out = it->get<std::string>();
    }

    void fail(const std::string& path, const std::string& msg) {
        violations_.push_back(path + ": " + msg);
    }

    std::vector<std::string>& violations() { return violations_; }

private:
    const nlohmann::json& root_;
    std::vector<std::string> violations_;
};

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& root) {
    if (!root.is_object()) throw ConfigError({"<root>: must be a JSON object"});

    static const char* const kSections[] = {"reward_frequency", "diminishing", "difficulty", "flow",
                                            "retention",        "decay",       "dataset",    "fit",
                                            "timeline",         "seeds",       "paths"};
    detail::ConfigReader rd(root);
    for (const auto& [key, _] : root.items()) {
        bool known = false;
        for (const char* s : kSections) known = known || key == s;
        if (!known) rd.fail(key, "unknown section");
    }

    const auto any = [](double) { return true; };
    const auto positive = [](double v) { return v > 0.0; };
    const auto non_negative = [](double v) { return v >= 0.0; };
    const auto unit_closed = [](double v) { return v >= 0.0 && v <= 1.0; };
    const auto unit_open = [](double v) { return v > 0.0 && v < 1.0; };

    RunConfig cfg;
    ModelProfile& p = cfg.params;

    auto* s = rd.section("reward_frequency", {"r0", "alpha"});
    rd.real(s, "reward_frequency", "r0", p.reward_frequency.r0, positive, "> 0");
    rd.real(s, "reward_frequency", "alpha", p.reward_frequency.alpha, any, "finite");

    s = rd.section("diminishing", {"v0", "beta"});
    rd.real(s, "diminishing", "v0", p.diminishing.v0, positive, "> 0");
    rd.real(s, "diminishing", "beta", p.diminishing.beta, non_negative, ">= 0");

    s = rd.section("difficulty", {"d_max", "gamma", "x0"});
    rd.real(s, "difficulty", "d_max", p.difficulty.d_max, positive, "> 0");
    rd.real(s, "difficulty", "gamma", p.difficulty.gamma, positive, "> 0");
    rd.real(s, "difficulty", "x0", p.difficulty.x0, any, "finite");

    s = rd.section("flow", {"k"});
    rd.real(s, "flow", "k", p.flow.k, any, "finite");

    s = rd.section("retention", {"a", "b", "c"});
    rd.real(s, "retention", "a", p.retention.a, any, "finite");
    rd.real(s, "retention", "b", p.retention.b, any, "finite");
    rd.real(s, "retention", "c", p.retention.c, any, "finite");

    s = rd.section("decay", {"e0", "lambda"});
    rd.real(s, "decay", "e0", p.decay.e0, unit_closed, "in [0, 1]");
    rd.real(s, "decay", "lambda", p.decay.lambda, non_negative, ">= 0");

    s = rd.section("dataset", {"n", "test_fraction"});
    rd.integer(s, "dataset", "n", cfg.dataset.n, 2);
    rd.real(s, "dataset", "test_fraction", cfg.dataset.test_fraction, unit_open, "in (0, 1)");

    s = rd.section("fit", {"learning_rate", "max_epochs", "convergence_tol"});
    rd.real(s, "fit", "learning_rate", cfg.fit.learning_rate, positive, "> 0");
    rd.integer(s, "fit", "max_epochs", cfg.fit.max_epochs, 1);
    rd.real(s, "fit", "convergence_tol", cfg.fit.convergence_tol, positive, "> 0");

    s = rd.section("timeline", {"steps", "initial_skill", "skill_gain", "engagement_boost",
                                "intervention_threshold", "intervention_reward_multiplier"});
    TimelineSettings& t = cfg.timeline;
    rd.integer(s, "timeline", "steps", t.steps, 1);
    rd.real(s, "timeline", "initial_skill", t.initial_skill, unit_closed, "in [0, 1]");
    rd.real(s, "timeline", "skill_gain", t.skill_gain, unit_open, "in (0, 1)");
    rd.real(s, "timeline", "engagement_boost", t.engagement_boost, non_negative, ">= 0");
    rd.real(s, "timeline", "intervention_threshold", t.intervention_threshold,
            [](double v) { return v >= 0.0 && v < 1.0; }, "in [0, 1) (0 disables interventions)");
    rd.real(s, "timeline", "intervention_reward_multiplier", t.intervention_reward_multiplier,
            [](double v) { return v >= 1.0; }, ">= 1");

    s = rd.section("seeds", {"data", "split", "fit", "sim"});
    rd.seed(s, "seeds", "data", cfg.seeds.data);
    rd.seed(s, "seeds", "split", cfg.seeds.split);
    rd.seed(s, "seeds", "fit", cfg.seeds.fit);
    rd.seed(s, "seeds", "sim", cfg.seeds.sim);
    cfg.fit.seed = cfg.seeds.fit;

    s = rd.section("paths", {"output_dir"});
    rd.string(s, "paths", "output_dir", cfg.output_dir);

    if (!rd.violations().empty()) throw ConfigError(std::move(rd.violations()));

    // Cross-field: the split must leave both sides non-empty.
    const auto n_test = test_count(static_cast<std::size_t>(cfg.dataset.n), cfg.dataset.test_fraction);
    if (n_test < 1 || n_test >= static_cast<std::size_t>(cfg.dataset.n)) {
        throw ConfigError({"dataset.test_fraction: leaves an empty train or test set for dataset.n"});
    }
    return cfg;
}

inline RunConfig parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("<parse>: ") + e.what()});
    }
    return parse_config(root);
}

inline RunConfig default_config() { return parse_config(std::string(kDefaultConfigJson)); }

inline RunConfig load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError({"<file>: cannot read '" + path + "'"});
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

inline TimelineConfig timeline_config(const RunConfig& cfg) {
    TimelineConfig t;
    t.steps = cfg.timeline.steps;
    t.params = cfg.params;
    t.skill_gain = cfg.timeline.skill_gain;
    t.engagement_boost = cfg.timeline.engagement_boost;
    t.intervention_threshold = cfg.timeline.intervention_threshold;
    t.intervention_reward_multiplier = cfg.timeline.intervention_reward_multiplier;
    t.seed = cfg.seeds.sim;
    return t;
}

}  // namespace gamify
