#pragma once
// Command bodies behind the gamify CLI. Each returns a process exit status,
// writes data to files or `out`, and diagnostics to `err`.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "gamify/config.hpp"
#include "gamify/csv.hpp"
#include "gamify/regression.hpp"
#include "gamify/simulator.hpp"

namespace gamify {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitFit = 4,
};

inline constexpr const char* kConfigEnvVar = "GAMIFY_CONFIG";

struct CaseStudyReport {
    double accuracy = 0.0;
    ConfusionMatrix confusion;
    double positive_rate = 0.0;
    RetentionModel model;
    std::int64_t epochs_used = 0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

// generate -> split -> fit -> evaluate on the held-out rows.
inline CaseStudyReport run_case_study(const RunConfig& cfg) {
    const Dataset data = generate_synthetic_dataset(static_cast<std::size_t>(cfg.dataset.n), cfg.seeds.data);
    const SplitPair split = train_test_split(data, cfg.dataset.test_fraction, cfg.seeds.split);
    const FitResult fit = fit_logistic(split.train, cfg.fit);

    const auto predicted = predict_labels(fit.model, split.test);
    const auto truth = labels_of(split.test);

    CaseStudyReport r;
    r.accuracy = accuracy(predicted, truth);
    r.confusion = confusion(predicted, truth);
    r.positive_rate = positive_rate(data);
    r.model = fit.model;
    r.epochs_used = fit.epochs_used;
    r.initial_loss = fit.initial_loss;
    r.final_loss = fit.final_loss;
    r.train_size = split.train.size();
    r.test_size = split.test.size();
    return r;
}

inline nlohmann::ordered_json to_json(const CaseStudyReport& r) {
    nlohmann::ordered_json j;
    j["accuracy"] = r.accuracy;
    j["confusion"] = {{"tn", r.confusion.tn}, {"fp", r.confusion.fp},
                      {"fn", r.confusion.fn}, {"tp", r.confusion.tp}};
    j["positive_rate"] = r.positive_rate;
    j["weights"] = {{"engagement", r.model.weights[0]}, {"reward", r.model.weights[1]}};
    j["bias"] = r.model.bias;
    j["scaler"] = {{"engagement", {{"mean", r.model.scaler[0].mean}, {"std", r.model.scaler[0].std}}},
                   {"reward", {{"mean", r.model.scaler[1].mean}, {"std", r.model.scaler[1].std}}}};
    j["epochs_used"] = r.epochs_used;
    j["initial_loss"] = r.initial_loss;
    j["final_loss"] = r.final_loss;
    j["train_size"] = r.train_size;
    j["test_size"] = r.test_size;
    return j;
}

// --config, then $GAMIFY_CONFIG, then the built-in default profile.
inline RunConfig resolve_config(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return load_config(*flag);
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
        return load_config(env);
    }
    return default_config();
}

inline int cmd_gen_data(std::int64_t n, std::uint64_t seed, const std::string& out_path,
                        std::ostream& out, std::ostream& err) {
    try {
        const Dataset d = generate_synthetic_dataset(static_cast<std::size_t>(n < 0 ? 0 : n), seed);
        write_file(out_path, [&](std::ostream& os) { write_dataset_csv(os, d); });
        out << "rows: " << d.size() << "\npositive_rate: " << format_double(positive_rate(d)) << '\n';
        return kExitOk;
    } catch (const DomainError& e) {
        err << "gen-data: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "gen-data: " << e.what() << '\n';
        return kExitIo;
    }
}

inline int cmd_case_study(const std::optional<std::string>& config_path,
                          const std::optional<std::string>& out_dir, std::ostream& out,
                          std::ostream& err) {
    try {
        const RunConfig cfg = resolve_config(config_path);
        const CaseStudyReport report = run_case_study(cfg);
        const std::filesystem::path dir = out_dir.value_or(cfg.output_dir);
        const auto text = to_json(report).dump(2) + "\n";
        write_file((dir / "report.json").string(), [&](std::ostream& os) { os << text; });
        write_file((dir / "confusion.csv").string(),
                   [&](std::ostream& os) { write_confusion_csv(os, report.confusion); });
        out << text;
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "case-study: " << e.what() << '\n';
        return kExitConfig;
    } catch (const FitError& e) {
        err << "case-study: " << e.what() << '\n';
        return kExitFit;
    } catch (const DomainError& e) {
        err << "case-study: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "case-study: " << e.what() << '\n';
        return kExitIo;
    }
}

// One line per task, same layout as the original session printout.
inline std::string session_line(const SessionStep& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Task %lld: Engagement: %.2f, Reward: %.2f, Difficulty: %.2f, Success: %s",
                  static_cast<long long>(s.task_index), s.engagement, s.reward, s.difficulty,
                  s.success ? "True" : "False");
    return buf;
}

inline int cmd_simulate_session(std::int64_t num_tasks, std::uint64_t seed,
                                const std::string& out_path, std::ostream& out, std::ostream& err) {
    try {
        const auto steps = simulate_session(num_tasks, seed);
        write_file(out_path, [&](std::ostream& os) { write_session_csv(os, steps); });
        for (const auto& s : steps) out << session_line(s) << '\n';
        return kExitOk;
    } catch (const DomainError& e) {
        err << "simulate-session: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "simulate-session: " << e.what() << '\n';
        return kExitIo;
    }
}

inline int cmd_simulate_timeline(const std::optional<std::string>& config_path,
                                 const std::optional<std::string>& out_path,
                                 std::optional<std::int64_t> steps_override, std::ostream& out,
                                 std::ostream& err) {
    try {
        const RunConfig cfg = resolve_config(config_path);
        TimelineConfig tc = timeline_config(cfg);
        if (steps_override) {
            if (*steps_override < 1) throw ConfigError({"--steps: must be >= 1"});
            tc.steps = *steps_override;
        }
        const auto points = run_timeline(initial_state(tc, cfg.timeline.initial_skill), tc);
        const std::string path =
            out_path.value_or((std::filesystem::path(cfg.output_dir) / "timeline.csv").string());
        write_file(path, [&](std::ostream& os) { write_timeline_csv(os, points); });
        const auto sum = summarize(points);
        out << "steps: " << points.size() << "\nfinal_skill: " << format_double(sum.final_skill)
            << "\nmean_retention_prob: " << format_double(sum.mean_retention_prob)
            << "\ninterventions: " << sum.interventions << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "simulate-timeline: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "simulate-timeline: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "simulate-timeline: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace gamify
