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

#include "dqtrl/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "dqtrl/errors.hpp"

namespace dqtrl {

QtPolicyGenerator::QtPolicyGenerator(QtShape shape, PolicyTopology topology, GradientMethod method)
    : shape_(shape), topology_(topology), method_(method) {
    shape_.validate();
    if (shape_.generated != topology_.num_params()) {
        throw ConfigError("generator produces " + std::to_string(shape_.generated) +
                          " weights but the policy needs " +
                          std::to_string(topology_.num_params()));
    }
}

std::vector<double> QtPolicyGenerator::generate(std::span<const double> params) const {
    return generate_theta(shape_, params);
}

std::vector<double> QtPolicyGenerator::pullback(std::span<const double> params,
                                                std::span<const double> grad_theta) const {
    return pullback_gradient(shape_, params, grad_theta, method_);
}

std::vector<double> DirectPolicyGenerator::generate(std::span<const double> params) const {
    if (params.size() != topology_.num_params()) {
        throw DimensionError("direct policy expects " + std::to_string(topology_.num_params()) +
                             " parameters, got " + std::to_string(params.size()));
    }
    return {params.begin(), params.end()};
}

std::vector<double> DirectPolicyGenerator::pullback(std::span<const double> params,
                                                    std::span<const double> grad_theta) const {
    if (params.size() != grad_theta.size() || params.size() != topology_.num_params()) {
        throw DimensionError("direct policy gradient has the wrong length");
    }
    return {grad_theta.begin(), grad_theta.end()};
}

double Trajectory::total_reward() const {
    return std::accumulate(rewards.begin(), rewards.end(), 0.0);
}

bool GradientPacket::finite() const {
    for (double g : grad) {
        if (!std::isfinite(g)) {
            return false;
        }
    }
    return std::isfinite(episode_return);
}

double GradientPacket::norm() const {
    double acc = 0.0;
    for (double g : grad) {
        acc += g * g;
    }
    return std::sqrt(acc);
}

Trajectory run_episode(const PolicyGenerator& generator, std::span<const double> params, Rng& rng,
                       std::uint64_t env_seed) {
    Trajectory traj;
    traj.theta = generator.generate(params);
    const PolicyTopology& topology = generator.topology();
    auto [state, obs] = reset(env_seed);
    while (!state.done) {
        const ActionDistribution dist = forward(topology, traj.theta, obs);
        const int action = sample_action(dist, rng);
        StepResult next = step(state, action_from_index(action));
        traj.observations.emplace_back(obs.begin(), obs.end());
        traj.actions.push_back(action);
        traj.rewards.push_back(next.reward);
        state = next.state;
        obs = next.obs;
    }
    return traj;
}

std::vector<double> compute_returns(std::span<const double> rewards, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("discount factor must lie in [0, 1]");
    }
    if (rewards.empty()) {
        throw ContractViolation("cannot compute returns of an empty reward sequence");
    }
    std::vector<double> returns(rewards.size());
    double running = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        running = rewards[t] + gamma * running;
        returns[t] = running;
    }
    return returns;
}

std::vector<double> standardize(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    if (out.empty()) {
        return out;
    }
    const double n = static_cast<double>(out.size());
    const double mean = std::accumulate(out.begin(), out.end(), 0.0) / n;
    double var = 0.0;
    for (double v : out) {
        var += (v - mean) * (v - mean);
    }
    const double stddev = std::sqrt(var / n);
    for (double& v : out) {
        v = stddev > 0.0 ? (v - mean) / stddev : 0.0;
    }
    return out;
}

GradientPacket episode_gradient(const PolicyGenerator& generator, std::span<const double> params,
                                const Trajectory& traj, double gamma, bool normalize) {
    const std::size_t steps = traj.length();
    if (steps == 0 || traj.observations.size() != steps || traj.rewards.size() != steps) {
        throw ContractViolation("trajectory is empty or inconsistent");
    }
    std::vector<double> returns = compute_returns(traj.rewards, gamma);
    if (normalize && steps >= 2) {
        returns = standardize(returns);
    }

    const PolicyTopology& topology = generator.topology();
    std::vector<double> grad_theta(topology.num_params(), 0.0);
    const double inv_len = 1.0 / static_cast<double>(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        accumulate_logpi_grad(topology, traj.theta, traj.observations[t], traj.actions[t],
                              returns[t] * inv_len, grad_theta);
    }

    GradientPacket packet;
    packet.phi_size = generator.num_quantum();
    packet.episode_return = traj.total_reward();
    packet.episode_length = static_cast<int>(steps);
    packet.grad = generator.pullback(params, grad_theta);
    if (!packet.finite()) {
        throw PoisonedPacketError("non-finite policy gradient (episode length " +
                                  std::to_string(steps) + ", return " +
                                  std::to_string(packet.episode_return) + ")");
    }
    return packet;
}

void TrainerSettings::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("gamma must lie in [0, 1]");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning rate must be positive");
    }
    if (episodes_per_round < 1) {
        throw ConfigError("episodes per round must be >= 1");
    }
    if (!(target_reward > 0.0 && target_reward <= 1.0)) {
        throw ConfigError("target reward must lie in (0, 1]");
    }
    if (target_window < 1) {
        throw ConfigError("target window must be >= 1");
    }
}

GradientPacket collect_packet(const PolicyGenerator& generator, std::span<const double> params,
                              Rng& rng, std::size_t episodes, double gamma, bool normalize,
                              std::size_t agent) {
    GradientPacket total;
    for (std::size_t e = 0; e < episodes; ++e) {
        const Trajectory traj = run_episode(generator, params, rng);
        GradientPacket packet = episode_gradient(generator, params, traj, gamma, normalize);
        if (e == 0) {
            total = std::move(packet);
            continue;
        }
        for (std::size_t i = 0; i < total.grad.size(); ++i) {
            total.grad[i] += packet.grad[i];
        }
        total.episode_return += packet.episode_return;
        total.episode_length += packet.episode_length;
    }
    if (episodes > 1) {
        const double inv = 1.0 / static_cast<double>(episodes);
        for (double& g : total.grad) {
            g *= inv;
        }
        total.episode_return *= inv;
    }
    total.episodes = static_cast<int>(episodes);
    total.agent = agent;
    return total;
}

TrainingHistory train_single_agent(const TrainerSettings& settings,
                                   const PolicyGenerator& generator, std::vector<double>& params,
                                   const RoundObserver& observer) {
    settings.validate();
    if (params.size() != generator.num_trainable()) {
        throw DimensionError("parameter vector does not match the generator");
    }
    TrainingHistory history(settings.target_window);
    Optimizer optimizer(settings.optimizer, settings.learning_rate, params.size());
    Rng rng(settings.base_seed);
    for (std::size_t round = 0; round < settings.max_rounds; ++round) {
        const auto start = std::chrono::steady_clock::now();
        const GradientPacket packet =
            collect_packet(generator, params, rng, settings.episodes_per_round, settings.gamma,
                           settings.normalize_returns, 0);
        optimizer.ascend(params, packet.grad);
        const double norm = packet.norm();

        RoundRecord record;
        record.agent_returns = {packet.episode_return};
        record.agent_lengths = {packet.episode_length};
        record.agent_grad_norms = {norm};
        record.mean_return = packet.episode_return;
        record.grad_norm = norm;
        record.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        const RoundRecord& stored = history.append(std::move(record));
        if (observer) {
            observer(stored, params);
        }
        if (settings.stop_at_target) {
            const auto avg = history.trailing_mean(settings.target_window);
            if (avg && *avg >= settings.target_reward) {
                break;
            }
        }
    }
    return history;
}

} // namespace dqtrl
