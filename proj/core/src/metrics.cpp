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

#include "dqtrl/metrics.hpp"

#include <array>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <type_traits>

namespace dqtrl {

namespace {

template <typename T>
std::string or_undefined(const std::optional<T>& v) {
    if (!v) {
        return "undefined";
    }
    if constexpr (std::is_floating_point_v<T>) {
        return format_real(*v);
    } else {
        return std::to_string(*v);
    }
}

} // namespace

std::string format_real(double x) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ec == std::errc{} ? end : buf.data());
}

void write_metrics_csv(std::ostream& out, const TrainingHistory& history,
                       std::size_t episodes_per_round, bool record_wall_time) {
    out << kMetricsSchema << '\n' << kMetricsColumns << '\n';
    for (const RoundRecord& r : history.rounds()) {
        const std::string wall = format_real(record_wall_time ? r.wall_ms : 0.0);
        const std::string moving = format_real(r.moving_average);
        int total_length = 0;
        for (std::size_t a = 0; a < r.agent_returns.size(); ++a) {
            out << r.round << ',' << a << ',' << episodes_per_round << ','
                << format_real(r.agent_returns[a]) << ',' << r.agent_lengths[a] << ',' << moving
                << ',' << format_real(r.agent_grad_norms[a]) << ',' << wall << '\n';
            total_length += r.agent_lengths[a];
        }
        out << r.round << ",all," << episodes_per_round * r.agent_returns.size() << ','
            << format_real(r.mean_return) << ',' << total_length << ',' << moving << ','
            << format_real(r.grad_norm) << ',' << wall << '\n';
    }
}

std::optional<double> reference_speedup(std::size_t agents) {
    switch (agents) {
    case 2:
        return 2.06;
    case 4:
        return 3.33;
    case 8:
        return 5.33;
    default:
        return std::nullopt;
    }
}

void write_speedup_csv(std::ostream& out, const SpeedupReport& report) {
    out << kSpeedupSchema << '\n' << kSpeedupColumns << '\n';
    for (const SpeedupRow& r : report.rows) {
        out << r.agents << ',' << r.layers << ',' << or_undefined(r.centric_rounds) << ','
            << or_undefined(r.distributed_rounds) << ',' << or_undefined(r.speedup) << ','
            << or_undefined(r.reference_speedup) << ',' << or_undefined(r.centric_episodes) << ','
            << or_undefined(r.distributed_episodes) << ',' << or_undefined(r.episode_speedup)
            << '\n';
    }
}

void write_speedup_table(std::ostream& out, const SpeedupReport& report) {
    out << "rounds to reach a " << report.target_window << "-round moving average >= "
        << report.target_reward << '\n';
    out << std::left << std::setw(8) << "agents" << std::setw(8) << "L" << std::setw(16)
        << "centric_rounds" << std::setw(16) << "dist_rounds" << std::setw(12) << "speedup"
        << std::setw(12) << "reference" << "episode_speedup" << '\n';
    auto fixed = [](const std::optional<double>& v) {
        if (!v) {
            return std::string("undefined");
        }
        std::ostringstream s;
        s << 'x' << std::fixed << std::setprecision(2) << *v;
        return s.str();
    };
    for (const SpeedupRow& r : report.rows) {
        out << std::left << std::setw(8) << r.agents << std::setw(8) << r.layers << std::setw(16)
            << or_undefined(r.centric_rounds) << std::setw(16) << or_undefined(r.distributed_rounds)
            << std::setw(12) << fixed(r.speedup) << std::setw(12)
            << (r.reference_speedup ? fixed(r.reference_speedup) : std::string("-"))
            << fixed(r.episode_speedup) << '\n';
    }
}

} // namespace dqtrl
