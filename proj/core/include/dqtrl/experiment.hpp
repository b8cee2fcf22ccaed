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

#pragma once

/**
 * @file experiment.hpp
 * @brief End-to-end runs behind the command-line tool: training, speedup
 * benchmark and evaluation.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "dqtrl/checkpoint.hpp"
#include "dqtrl/config.hpp"
#include "dqtrl/dist_sync.hpp"
#include "dqtrl/history.hpp"
#include "dqtrl/metrics.hpp"
#include "dqtrl/trainer.hpp"

namespace dqtrl {

struct ParameterCounts {
    /// Values updated by the optimizer.
    std::size_t trainable = 0;
    /// Ansatz angles (0 for the classical baseline).
    std::size_t quantum = 0;
    /// Mapping-model parameters (0 for the classical baseline).
    std::size_t mapping = 0;
    /// Policy weights the trainable values produce.
    std::size_t generated = 0;
    int qubits = 0;
};

PolicyTopology policy_topology(const ExperimentConfig& config);
ParameterCounts parameter_counts(const ExperimentConfig& config);

struct ExperimentModel {
    std::unique_ptr<PolicyGenerator> generator;
    std::vector<double> params;
    Checkpoint header;
};

/// Builds the generator and initial parameters. QTRL shapes must compress:
/// trainable < k < classical baseline count, otherwise ConfigError.
ExperimentModel make_model(const ExperimentConfig& config);

std::unique_ptr<PolicyGenerator> make_generator(const Checkpoint& ckpt,
                                                GradientMethod method = GradientMethod::kAdjoint);

SyncConfig make_sync_config(const ExperimentConfig& config);

struct TrainResult {
    TrainingHistory history;
    Checkpoint checkpoint;
    ParameterCounts counts;
};

TrainResult run_training(const ExperimentConfig& config, const RoundObserver& observer = {});

/// Runs training, writes metrics.csv and model.ckpt under config.out_dir.
int cmd_train(const ExperimentConfig& config, std::ostream& out);

/// Single-agent run at config.layers, then one distributed run per entry of
/// config.speedup_agents, each stopped at the target.
SpeedupReport run_speedup_benchmark(const ExperimentConfig& config, std::ostream* progress = nullptr);

/// Runs the benchmark, writes speedup.csv and prints the table.
int cmd_bench_speedup(const ExperimentConfig& config, std::ostream& out);

struct EvalResult {
    std::size_t episodes = 0;
    double mean_reward = 0.0;
    double stddev = 0.0;
    double success_rate = 0.0;
};

/// Sampled-action evaluation over `episodes` episodes from Rng(seed).
EvalResult evaluate(const PolicyGenerator& generator, std::span<const double> params,
                    std::size_t episodes, std::uint64_t seed);
EvalResult evaluate_checkpoint(const Checkpoint& ckpt, std::size_t episodes, std::uint64_t seed);

} // namespace dqtrl
