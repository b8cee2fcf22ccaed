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

#include "dqtrl/history.hpp"

#include <algorithm>

#include "dqtrl/errors.hpp"

namespace dqtrl {

TrainingHistory::TrainingHistory(std::size_t window) : window_(window) {
    if (window_ == 0) {
        throw ConfigError("moving-average window must be >= 1");
    }
}

const RoundRecord& TrainingHistory::append(RoundRecord record) {
    record.round = rounds_.size() + 1;
    const std::size_t count = std::min(window_, rounds_.size() + 1);
    double sum = record.mean_return;
    for (std::size_t i = rounds_.size() + 1 - count; i < rounds_.size(); ++i) {
        sum += rounds_[i].mean_return;
    }
    record.moving_average = sum / static_cast<double>(count);
    rounds_.push_back(std::move(record));
    return rounds_.back();
}

std::vector<double> TrainingHistory::mean_returns() const {
    std::vector<double> out;
    out.reserve(rounds_.size());
    for (const auto& r : rounds_) {
        out.push_back(r.mean_return);
    }
    return out;
}

std::optional<double> TrainingHistory::trailing_mean(std::size_t window) const {
    if (window == 0 || rounds_.size() < window) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (std::size_t i = rounds_.size() - window; i < rounds_.size(); ++i) {
        sum += rounds_[i].mean_return;
    }
    return sum / static_cast<double>(window);
}

std::size_t TrainingHistory::total_episodes(std::size_t episodes_per_round) const {
    std::size_t total = 0;
    for (const auto& r : rounds_) {
        total += r.agent_returns.size() * episodes_per_round;
    }
    return total;
}

std::optional<double> trailing_average(std::span<const double> values, std::size_t window) {
    if (window == 0 || values.size() < window) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (std::size_t i = values.size() - window; i < values.size(); ++i) {
        sum += values[i];
    }
    return sum / static_cast<double>(window);
}

std::optional<std::size_t> rounds_to_target(std::span<const double> mean_returns, double target,
                                            std::size_t window) {
    if (window == 0) {
        throw ConfigError("target window must be >= 1");
    }
    for (std::size_t i = window; i <= mean_returns.size(); ++i) {
        if (*trailing_average(mean_returns.first(i), window) >= target) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> rounds_to_target(const TrainingHistory& history, double target,
                                            std::size_t window) {
    const auto returns = history.mean_returns();
    return rounds_to_target(returns, target, window);
}

std::optional<double> speedup(std::optional<std::size_t> centric_rounds,
                              std::optional<std::size_t> distributed_rounds) {
    if (!centric_rounds || !distributed_rounds || *distributed_rounds == 0) {
        return std::nullopt;
    }
    return static_cast<double>(*centric_rounds) / static_cast<double>(*distributed_rounds);
}

bool same_trajectory(const TrainingHistory& a, const TrainingHistory& b) {
    if (a.window() != b.window() || a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a.rounds()[i];
        const auto& y = b.rounds()[i];
        if (x.round != y.round || x.agent_returns != y.agent_returns ||
            x.agent_lengths != y.agent_lengths || x.agent_grad_norms != y.agent_grad_norms ||
            x.mean_return != y.mean_return || x.moving_average != y.moving_average ||
            x.grad_norm != y.grad_norm) {
            return false;
        }
    }
    return true;
}

} // namespace dqtrl
