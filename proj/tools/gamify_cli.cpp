// gamify: command-line front end for the gamification models.
//
//   gamify gen-data          --n 1000 --seed 0 --out data.csv
//   gamify case-study        [--config cfg.json] [--out DIR]
//   gamify simulate-session  --tasks 10 --seed 0 --out session.csv
//   gamify simulate-timeline [--config cfg.json] [--steps N] [--out timeline.csv]
//
// Without --config, GAMIFY_CONFIG names the config file; failing that the
// built-in default profile is used.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gamify/commands.hpp"

namespace {

template <typename T>
std::optional<T> maybe(const CLI::Option* opt, const T& value) {
    return opt->count() > 0 ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive gamification models, retention prediction and learner simulation"};
    app.require_subcommand(1);

    std::int64_t n = 1000;
    std::uint64_t data_seed = 0;
    std::string data_out;
    auto* gen = app.add_subcommand("gen-data", "Write a synthetic engagement/reward/retention dataset");
    gen->add_option("--n", n, "Number of rows")->check(CLI::PositiveNumber);
    gen->add_option("--seed", data_seed, "PRNG seed");
    gen->add_option("--out", data_out, "Output CSV path")->required();

    std::string cs_config, cs_out;
    auto* cs = app.add_subcommand("case-study", "Generate, split, fit and evaluate the retention model");
    auto* cs_config_opt = cs->add_option("--config", cs_config, "JSON config path");
    auto* cs_out_opt = cs->add_option("--out", cs_out, "Directory for report.json and confusion.csv");

    std::int64_t tasks = 10;
    std::uint64_t session_seed = 0;
    std::string session_out;
    auto* ss = app.add_subcommand("simulate-session", "Run the task-by-task learning session loop");
    ss->add_option("--tasks", tasks, "Number of tasks")->check(CLI::PositiveNumber);
    ss->add_option("--seed", session_seed, "PRNG seed");
    ss->add_option("--out", session_out, "Output CSV path")->required();

    std::string tl_config, tl_out;
    std::int64_t steps = 0;
    auto* tl = app.add_subcommand("simulate-timeline", "Simulate one user's timeline with interventions");
    auto* tl_config_opt = tl->add_option("--config", tl_config, "JSON config path");
    auto* tl_out_opt = tl->add_option("--out", tl_out, "Output CSV path");
    auto* tl_steps_opt = tl->add_option("--steps", steps, "Override timeline.steps")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) return gamify::cmd_gen_data(n, data_seed, data_out, std::cout, std::cerr);
    if (cs->parsed()) {
        return gamify::cmd_case_study(maybe(cs_config_opt, cs_config), maybe(cs_out_opt, cs_out),
                                      std::cout, std::cerr);
    }
    if (ss->parsed()) {
        return gamify::cmd_simulate_session(tasks, session_seed, session_out, std::cout, std::cerr);
    }
    return gamify::cmd_simulate_timeline(maybe(tl_config_opt, tl_config), maybe(tl_out_opt, tl_out),
                                         maybe(tl_steps_opt, steps), std::cout, std::cerr);
}
