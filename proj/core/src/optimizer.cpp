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

#include "dqtrl/optimizer.hpp"

#include <cmath>

#include "dqtrl/errors.hpp"

namespace dqtrl {

std::string to_string(OptimizerKind kind) {
    return kind == OptimizerKind::kAdam ? "adam" : "plain";
}

OptimizerKind parse_optimizer(const std::string& name) {
    if (name == "adam" || name == "adaptive-moment") {
        return OptimizerKind::kAdam;
    }
    if (name == "plain" || name == "plain-ascent" || name == "sgd") {
        return OptimizerKind::kPlainAscent;
    }
    throw ConfigError("unknown optimizer '" + name + "' (expected adam or plain)");
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate, std::size_t size)
    : kind_(kind), learning_rate_(learning_rate) {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning rate must be a positive finite number");
    }
    if (kind_ == OptimizerKind::kAdam) {
        first_moment_.assign(size, 0.0);
        second_moment_.assign(size, 0.0);
    }
}

void Optimizer::ascend(std::span<double> params, std::span<const double> grad) {
    if (params.size() != grad.size()) {
        throw DimensionError("gradient and parameter lengths differ");
    }
    ++steps_;
    if (kind_ == OptimizerKind::kPlainAscent) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] += learning_rate_ * grad[i];
        }
        return;
    }
    if (first_moment_.size() != params.size()) {
        throw DimensionError("optimizer state was sized for a different model");
    }
    const double t = static_cast<double>(steps_);
    const double correction1 = 1.0 - std::pow(kBeta1, t);
    const double correction2 = 1.0 - std::pow(kBeta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        first_moment_[i] = kBeta1 * first_moment_[i] + (1.0 - kBeta1) * grad[i];
        second_moment_[i] = kBeta2 * second_moment_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
        const double m_hat = first_moment_[i] / correction1;
        const double v_hat = second_moment_[i] / correction2;
        params[i] += learning_rate_ * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
}

} // namespace dqtrl
