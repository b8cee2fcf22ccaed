// Copyright 2026 The dqtrl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dqtrl command-line entry point: train, bench-speedup, verify, eval.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dqtrl/checkpoint.hpp"
#include "dqtrl/config.hpp"
#include "dqtrl/errors.hpp"
#include "dqtrl/experiment.hpp"
#include "dqtrl/verify.hpp"

namespace {

// Flags shared by train and bench-speedup. Each one, when given, overrides
// the value loaded from --config.
struct Overrides {
    std::string config_path;
    std::optional<std::string> mode;
    std::optional<std::size_t> agents;
    std::optional<int> layers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool sequential = false;
    std::optional<std::string> optimizer;
    std::optional<double> lr;
    std::optional<double> gamma;
    bool no_normalize = false;
    std::optional<std::size_t> max_rounds;
    bool stop_at_target = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        app->add_option("--mode", mode, "classical-baseline | qtrl-centric | qtrl-distributed");
        app->add_option("--agents", agents, "number of agents N");
        app->add_option("--layers", layers, "ansatz depth L");
        app->add_option("--seed", seed, "base seed");
        app->add_option("--out", out, "output directory");
        app->add_flag("--sequential", sequential, "collect agent episodes serially (reproducible)");
        app->add_option("--optimizer", optimizer, "adam | plain");
        app->add_option("--lr", lr, "learning rate");
        app->add_option("--gamma", gamma, "discount factor");
        app->add_flag("--no-normalize-returns", no_normalize, "use raw discounted returns");
        app->add_option("--max-rounds", max_rounds, "synchronization round budget");
        app->add_flag("--stop-at-target", stop_at_target, "stop once the moving average reaches the target");
    }

    dqtrl::ExperimentConfig resolve() const {
        dqtrl::ExperimentConfig c;
        if (!config_path.empty()) {
            c = dqtrl::load_config(config_path);
        }
        if (mode) c.mode = dqtrl::parse_mode(*mode);
        if (agents) c.agents = *agents;
        if (layers) c.layers = *layers;
        if (seed) c.seed = *seed;
        if (out) c.out_dir = *out;
        if (sequential) c.sequential = true;
        if (optimizer) c.optimizer = dqtrl::parse_optimizer(*optimizer);
        if (lr) c.learning_rate = *lr;
        if (gamma) c.gamma = *gamma;
        if (no_normalize) c.normalize_returns = false;
        if (max_rounds) c.max_rounds = *max_rounds;
        if (stop_at_target) c.stop_at_target = true;
        c.validate();
        return c;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed quantum-train policy gradient on a 5x5 gridworld"};
    app.require_subcommand(1);

    Overrides train_opts;
    CLI::App* train = app.add_subcommand("train", "train one configuration");
    train_opts.attach(train);

    Overrides bench_opts;
    CLI::App* bench = app.add_subcommand("bench-speedup", "single-agent vs distributed rounds to target");
    bench_opts.attach(bench);

    std::string suite = "all";
    std::uint64_t verify_seed = 2024;
    CLI::App* verify = app.add_subcommand("verify", "finite-difference, oracle and environment checks");
    verify->add_option("suite", suite, "gradient | oracle | env | all");
    verify->add_option("--seed", verify_seed, "seed for the random draws");

    std::string ckpt_path;
    std::size_t episodes = 100;
    std::uint64_t eval_seed = 0;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint with sampled actions");
    eval->add_option("checkpoint", ckpt_path, "model.ckpt written by train")->required();
    eval->add_option("--episodes", episodes, "number of evaluation episodes");
    eval->add_option("--seed", eval_seed, "evaluation seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            return dqtrl::cmd_train(train_opts.resolve(), std::cout);
        }
        if (bench->parsed()) {
            return dqtrl::cmd_bench_speedup(bench_opts.resolve(), std::cout);
        }
        if (verify->parsed()) {
            const dqtrl::VerifyReport report = dqtrl::run_verify(dqtrl::parse_verify_suite(suite), verify_seed);
            report.print(std::cout);
            return report.passed() ? 0 : 1;
        }
        if (eval->parsed()) {
            const dqtrl::Checkpoint ckpt = dqtrl::load_checkpoint(ckpt_path);
            const dqtrl::EvalResult r = dqtrl::evaluate_checkpoint(ckpt, episodes, eval_seed);
            std::cout << "episodes " << r.episodes << "\nmean_reward " << r.mean_reward << "\nstddev "
                      << r.stddev << "\nsuccess_rate " << r.success_rate << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
