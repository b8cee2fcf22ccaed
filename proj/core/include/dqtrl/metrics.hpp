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
 * @file metrics.hpp
 * @brief CSV writers for training histories and speedup reports.
 *
 * metrics.csv starts with "# schema: dqtrl-metrics/1" followed by the
 * column row
 *
 *   round,agent,episodes,return,length,moving_avg,grad_norm,wall_ms
 *
 * One row per (round, agent) and then one aggregate row with agent "all",
 * holding the mean return, total length and the norm of the averaged
 * gradient. Reals use the shortest round-trip representation.
 */

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dqtrl/history.hpp"

namespace dqtrl {

inline constexpr const char* kMetricsSchema = "# schema: dqtrl-metrics/1";
inline constexpr const char* kMetricsColumns =
    "round,agent,episodes,return,length,moving_avg,grad_norm,wall_ms";
inline constexpr const char* kSpeedupSchema = "# schema: dqtrl-speedup/1";
inline constexpr const char* kSpeedupColumns =
    "agents,layers,centric_rounds,distributed_rounds,speedup,reference_speedup,"
    "centric_episodes,distributed_episodes,episode_speedup";

/// Shortest decimal string that parses back to exactly `x`.
std::string format_real(double x);

/// `record_wall_time` = false writes 0 in wall_ms so the file is reproducible.
void write_metrics_csv(std::ostream& out, const TrainingHistory& history,
                       std::size_t episodes_per_round, bool record_wall_time);

struct SpeedupRow {
    std::size_t agents = 1;
    int layers = 3;
    std::optional<std::size_t> centric_rounds;
    std::optional<std::size_t> distributed_rounds;
    std::optional<double> speedup;
    std::optional<double> reference_speedup;
    std::optional<std::size_t> centric_episodes;
    std::optional<std::size_t> distributed_episodes;
    std::optional<double> episode_speedup;

    bool operator==(const SpeedupRow&) const = default;
};

struct SpeedupReport {
    double target_reward = 0.8;
    std::size_t target_window = 50;
    std::vector<SpeedupRow> rows;

    bool operator==(const SpeedupReport&) const = default;
};

/// Published reference speedups for 2, 4 and 8 agents (none otherwise).
std::optional<double> reference_speedup(std::size_t agents);

void write_speedup_csv(std::ostream& out, const SpeedupReport& report);
void write_speedup_table(std::ostream& out, const SpeedupReport& report);

} // namespace dqtrl
