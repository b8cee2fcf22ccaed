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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqtrl/optimizer.hpp"
#include "dqtrl/policy_net.hpp"
#include "dqtrl/qsim.hpp"

namespace dqtrl {

enum class Mode {
    kClassicalBaseline,
    kQtrlCentric,
    kQtrlDistributed,
};

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);

std::string to_string(GradientMethod method);
GradientMethod parse_gradient_method(const std::string& name);

/// Everything a training or benchmark run needs. JSON keys match the field
/// names (see to_json); unknown keys are rejected.
struct ExperimentConfig {
    Mode mode = Mode::kQtrlDistributed;
    int layers = 3;
    std::size_t agents = 4;
    double gamma = 0.99;
    double learning_rate = 0.001;
    bool normalize_returns = true;
    OptimizerKind optimizer = OptimizerKind::kAdam;
    std::size_t episodes_per_round = 1;
    /// Defaults to 5000 for single-agent modes and 2000 for distributed.
    std::optional<std::size_t> max_rounds;
    double target_reward = 0.8;
    std::size_t target_window = 50;
    bool stop_at_target = false;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool sequential = false;
    Activation activation = Activation::kTanh;
    GradientMethod gradient = GradientMethod::kAdjoint;
    /// Agent counts compared against the single-agent run by bench-speedup.
    std::vector<std::size_t> speedup_agents = {2, 4, 8};

    /// Agents actually used (1 unless the mode is distributed).
    std::size_t effective_agents() const;
    std::size_t effective_max_rounds() const;

    void validate() const;
};

ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
std::string to_json(const ExperimentConfig& config);

} // namespace dqtrl
