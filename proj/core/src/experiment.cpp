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

#include "dqtrl/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dqtrl/errors.hpp"
#include "dqtrl/qt_gen.hpp"

namespace dqtrl {

namespace fs = std::filesystem;

PolicyTopology policy_topology(const ExperimentConfig& config) {
    PolicyTopology t = config.mode == Mode::kClassicalBaseline ? PolicyTopology::classical_baseline()
                                                               : PolicyTopology::generated_default();
    t.activation = config.activation;
    return t;
}

ParameterCounts parameter_counts(const ExperimentConfig& config) {
    const PolicyTopology topology = policy_topology(config);
    ParameterCounts counts;
    counts.generated = topology.num_params();
    if (config.mode == Mode::kClassicalBaseline) {
        counts.trainable = counts.generated;
        return counts;
    }
    const QtShape shape = QtShape::for_generated(counts.generated, config.layers);
    counts.qubits = shape.qubits;
    counts.quantum = shape.num_angles();
    counts.mapping = shape.num_mapping_params();
    counts.trainable = shape.num_trainable();
    return counts;
}

ExperimentModel make_model(const ExperimentConfig& config) {
    config.validate();
    const PolicyTopology topology = policy_topology(config);
    ExperimentModel model;
    model.header.mode = config.mode;
    model.header.topology = topology;
    model.header.generated = topology.num_params();
    model.header.seed = config.seed;

    if (config.mode == Mode::kClassicalBaseline) {
        Rng rng(splitmix64(config.seed));
        model.params = init_policy_params(topology, rng);
        model.generator = std::make_unique<DirectPolicyGenerator>(topology);
        return model;
    }

    const QtShape shape = QtShape::for_generated(topology.num_params(), config.layers);
    const std::size_t classical = PolicyTopology::classical_baseline().num_params();
    if (!shape.compresses() || shape.num_trainable() >= classical) {
        throw ConfigError("quantum-train shape does not compress: " +
                          std::to_string(shape.num_trainable()) + " trainable vs k = " +
                          std::to_string(shape.generated) + " and classical " +
                          std::to_string(classical));
    }
    GlobalModel global = GlobalModel::initialize(shape, config.seed);
    model.params.assign(global.params().begin(), global.params().end());
    model.header.qubits = shape.qubits;
    model.header.blocks = shape.blocks;
    model.generator = std::make_unique<QtPolicyGenerator>(shape, topology, config.gradient);
    return model;
}

std::unique_ptr<PolicyGenerator> make_generator(const Checkpoint& ckpt, GradientMethod method) {
    ckpt.validate();
    if (ckpt.is_quantum()) {
        return std::make_unique<QtPolicyGenerator>(ckpt.qt_shape(), ckpt.topology, method);
    }
    return std::make_unique<DirectPolicyGenerator>(ckpt.topology);
}

SyncConfig make_sync_config(const ExperimentConfig& config) {
    SyncConfig sync;
    sync.num_agents = config.effective_agents();
    sync.sequential = config.sequential;
    TrainerSettings& t = sync.trainer;
    t.gamma = config.gamma;
    t.normalize_returns = config.normalize_returns;
    t.learning_rate = config.learning_rate;
    t.optimizer = config.optimizer;
    t.episodes_per_round = config.episodes_per_round;
    t.max_rounds = config.effective_max_rounds();
    t.target_reward = config.target_reward;
    t.target_window = config.target_window;
    t.stop_at_target = config.stop_at_target;
    t.base_seed = config.seed;
    return sync;
}

TrainResult run_training(const ExperimentConfig& config, const RoundObserver& observer) {
    ExperimentModel model = make_model(config);
    const SyncConfig sync = make_sync_config(config);
    TrainingHistory history = train_distributed(sync, *model.generator, model.params, observer);
    Checkpoint ckpt = model.header;
    ckpt.params = std::move(model.params);
    return {std::move(history), std::move(ckpt), parameter_counts(config)};
}

namespace {

void print_counts(std::ostream& out, const ExperimentConfig& config, const ParameterCounts& c) {
    out << "mode: " << to_string(config.mode) << '\n';
    if (config.mode == Mode::kClassicalBaseline) {
        const PolicyTopology t = policy_topology(config);
        out << "topology: (" << t.inputs << '-' << t.hidden << ", " << t.hidden << '-' << t.actions
            << ")\n";
        out << "trainable parameters: " << c.trainable << '\n';
        return;
    }
    out << "qubits: " << c.qubits << ", blocks: " << config.layers << '\n';
    out << "trainable parameters: " << c.trainable << " (" << c.quantum << " angles + "
        << c.mapping << " mapping)\n";
    out << "generated parameters: " << c.generated << '\n';
}

fs::path prepare_out_dir(const ExperimentConfig& config) {
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

} // namespace

int cmd_train(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    print_counts(out, config, parameter_counts(config));
    const fs::path dir = prepare_out_dir(config);
    const TrainResult result = run_training(config);

    std::ostringstream csv;
    write_metrics_csv(csv, result.history, config.episodes_per_round, !config.sequential);
    write_file(dir / "metrics.csv", csv.str());
    save_checkpoint((dir / "model.ckpt").string(), result.checkpoint);

    out << "rounds: " << result.history.size() << '\n';
    if (!result.history.empty()) {
        out << "final moving average (" << config.target_window
            << " rounds): " << result.history.back().moving_average << '\n';
    }
    const auto hit = rounds_to_target(result.history, config.target_reward, config.target_window);
    out << "rounds to target " << config.target_reward << ": "
        << (hit ? std::to_string(*hit) : std::string("not reached")) << '\n';
    out << "wrote " << (dir / "metrics.csv").string() << " and " << (dir / "model.ckpt").string()
        << '\n';
    return 0;
}

SpeedupReport run_speedup_benchmark(const ExperimentConfig& config, std::ostream* progress) {
    config.validate();
    ExperimentConfig centric = config;
    centric.mode = Mode::kQtrlCentric;
    centric.agents = 1;
    centric.stop_at_target = true;

    SpeedupReport report;
    report.target_reward = config.target_reward;
    report.target_window = config.target_window;

    const TrainResult base = run_training(centric);
    const auto centric_rounds =
        rounds_to_target(base.history, config.target_reward, config.target_window);
    if (progress) {
        *progress << "centric L=" << config.layers << ": "
                   << (centric_rounds ? std::to_string(*centric_rounds) : "not reached")
                   << " rounds\n";
    }
    const std::size_t epr = config.episodes_per_round;
    auto episodes = [epr](std::optional<std::size_t> rounds, std::size_t agents) {
        return rounds ? std::optional<std::size_t>(*rounds * agents * epr) : std::nullopt;
    };

    SpeedupRow single;
    single.agents = 1;
    single.layers = config.layers;
    single.centric_rounds = centric_rounds;
    single.distributed_rounds = centric_rounds;
    single.speedup = centric_rounds ? std::optional<double>(1.0) : std::nullopt;
    single.centric_episodes = episodes(centric_rounds, 1);
    single.distributed_episodes = single.centric_episodes;
    single.episode_speedup = single.speedup;
    report.rows.push_back(single);

    for (std::size_t agents : config.speedup_agents) {
        if (agents == 1) {
            continue;
        }
        ExperimentConfig dist = config;
        dist.mode = Mode::kQtrlDistributed;
        dist.agents = agents;
        dist.stop_at_target = true;
        const TrainResult run = run_training(dist);
        SpeedupRow row;
        row.agents = agents;
        row.layers = config.layers;
        row.centric_rounds = centric_rounds;
        row.distributed_rounds =
            rounds_to_target(run.history, config.target_reward, config.target_window);
        row.speedup = speedup(row.centric_rounds, row.distributed_rounds);
        row.reference_speedup = reference_speedup(agents);
        row.centric_episodes = episodes(centric_rounds, 1);
        row.distributed_episodes = episodes(row.distributed_rounds, agents);
        row.episode_speedup = speedup(row.centric_episodes, row.distributed_episodes);
        if (progress) {
            *progress << "distributed N=" << agents << ": "
                      << (row.distributed_rounds ? std::to_string(*row.distributed_rounds)
                                                 : "not reached")
                      << " rounds\n";
        }
        report.rows.push_back(row);
    }
    return report;
}

int cmd_bench_speedup(const ExperimentConfig& config, std::ostream& out) {
    const fs::path dir = prepare_out_dir(config);
    const SpeedupReport report = run_speedup_benchmark(config, &out);
    std::ostringstream csv;
    write_speedup_csv(csv, report);
    write_file(dir / "speedup.csv", csv.str());
    write_speedup_table(out, report);
    out << "wrote " << (dir / "speedup.csv").string() << '\n';
    return 0;
}

EvalResult evaluate(const PolicyGenerator& generator, std::span<const double> params,
                    std::size_t episodes, std::uint64_t seed) {
    if (episodes == 0) {
        throw ConfigError("evaluation needs at least one episode");
    }
    Rng rng(seed);
    std::vector<double> rewards;
    rewards.reserve(episodes);
    std::size_t successes = 0;
    for (std::size_t e = 0; e < episodes; ++e) {
        const Trajectory traj = run_episode(generator, params, rng);
        const double r = traj.total_reward();
        rewards.push_back(r);
        successes += r > 0.0 ? 1 : 0;
    }
    EvalResult result;
    result.episodes = episodes;
    double sum = 0.0;
    for (double r : rewards) {
        sum += r;
    }
    result.mean_reward = sum / static_cast<double>(episodes);
    if (episodes > 1) {
        double var = 0.0;
        for (double r : rewards) {
            var += (r - result.mean_reward) * (r - result.mean_reward);
        }
        result.stddev = std::sqrt(var / static_cast<double>(episodes - 1));
    }
    result.success_rate = static_cast<double>(successes) / static_cast<double>(episodes);
    return result;
}

EvalResult evaluate_checkpoint(const Checkpoint& ckpt, std::size_t episodes, std::uint64_t seed) {
    const auto generator = make_generator(ckpt);
    return evaluate(*generator, ckpt.params, episodes, seed);
}

} // namespace dqtrl
