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
#include <optional>
#include <span>
#include <vector>

namespace dqtrl {

/// One synchronization round. Rounds are numbered from 1.
struct RoundRecord {
    std::size_t round = 0;
    std::vector<double> agent_returns;
    std::vector<int> agent_lengths;
    std::vector<double> agent_grad_norms;
    double mean_return = 0.0;
    /// Trailing mean of mean_return over the history window (partial at the start).
    double moving_average = 0.0;
    /// Norm of the averaged gradient applied this round.
    double grad_norm = 0.0;
    double wall_ms = 0.0;
};

class TrainingHistory {
  public:
    explicit TrainingHistory(std::size_t window = 50);

    /// Assigns the next round index and the moving average, then stores the record.
    const RoundRecord& append(RoundRecord record);

    std::size_t window() const { return window_; }
    std::size_t size() const { return rounds_.size(); }
    bool empty() const { return rounds_.empty(); }
    const std::vector<RoundRecord>& rounds() const { return rounds_; }
    const RoundRecord& back() const { return rounds_.back(); }

    std::vector<double> mean_returns() const;

    /// Mean of the last `window` mean returns; none with fewer rounds.
    std::optional<double> trailing_mean(std::size_t window) const;

    /// Total episodes across agents, assuming `episodes_per_round` per agent.
    std::size_t total_episodes(std::size_t episodes_per_round) const;

  private:
    std::size_t window_;
    std::vector<RoundRecord> rounds_;
};

/// Trailing moving average with a full `window`; none for fewer rounds.
std::optional<double> trailing_average(std::span<const double> values, std::size_t window);

/// First round (1-based) whose trailing `window`-round average of mean
/// returns reaches `target`. Partial windows never count.
std::optional<std::size_t> rounds_to_target(std::span<const double> mean_returns, double target,
                                            std::size_t window);
std::optional<std::size_t> rounds_to_target(const TrainingHistory& history, double target,
                                            std::size_t window);

/// centric / distributed, or none when either run missed the target.
std::optional<double> speedup(std::optional<std::size_t> centric_rounds,
                              std::optional<std::size_t> distributed_rounds);

/// Equality of every field except wall-clock time.
bool same_trajectory(const TrainingHistory& a, const TrainingHistory& b);

} // namespace dqtrl
