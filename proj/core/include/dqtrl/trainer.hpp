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
 * @file trainer.hpp
 * @brief REINFORCE for a single agent whose policy weights are generated
 * from a smaller trainable vector.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "dqtrl/gridworld.hpp"
#include "dqtrl/history.hpp"
#include "dqtrl/optimizer.hpp"
#include "dqtrl/policy_net.hpp"
#include "dqtrl/qt_gen.hpp"
#include "dqtrl/rng.hpp"

namespace dqtrl {

/// Maps the trainable vector to policy weights and pulls gradients back.
class PolicyGenerator {
  public:
    virtual ~PolicyGenerator() = default;

    virtual const PolicyTopology& topology() const = 0;
    virtual std::size_t num_trainable() const = 0;
    /// Length of the leading quantum-angle block of the trainable vector.
    virtual std::size_t num_quantum() const = 0;

    virtual std::vector<double> generate(std::span<const double> params) const = 0;
    virtual std::vector<double> pullback(std::span<const double> params,
                                         std::span<const double> grad_theta) const = 0;
};

/// theta = M_beta(probabilities(phi)).
class QtPolicyGenerator final : public PolicyGenerator {
  public:
    QtPolicyGenerator(QtShape shape, PolicyTopology topology,
                      GradientMethod method = GradientMethod::kAdjoint);

    const QtShape& shape() const { return shape_; }
    GradientMethod method() const { return method_; }

    const PolicyTopology& topology() const override { return topology_; }
    std::size_t num_trainable() const override { return shape_.num_trainable(); }
    std::size_t num_quantum() const override { return shape_.num_angles(); }
    std::vector<double> generate(std::span<const double> params) const override;
    std::vector<double> pullback(std::span<const double> params,
                                 std::span<const double> grad_theta) const override;

  private:
    QtShape shape_;
    PolicyTopology topology_;
    GradientMethod method_;
};

/// Identity map: the classical baseline trains theta directly.
class DirectPolicyGenerator final : public PolicyGenerator {
  public:
    explicit DirectPolicyGenerator(PolicyTopology topology) : topology_(topology) {}

    const PolicyTopology& topology() const override { return topology_; }
    std::size_t num_trainable() const override { return topology_.num_params(); }
    std::size_t num_quantum() const override { return 0; }
    std::vector<double> generate(std::span<const double> params) const override;
    std::vector<double> pullback(std::span<const double> params,
                                 std::span<const double> grad_theta) const override;

  private:
    PolicyTopology topology_;
};

struct Trajectory {
    /// Policy weights used for every step of the episode.
    std::vector<double> theta;
    std::vector<std::vector<double>> observations;
    std::vector<int> actions;
    std::vector<double> rewards;

    std::size_t length() const { return actions.size(); }
    double total_reward() const;
};

/// Gradient of J with respect to the trainable vector, in its layout.
struct GradientPacket {
    std::size_t agent = 0;
    std::vector<double> grad;
    std::size_t phi_size = 0;
    /// Mean undiscounted return over the episodes folded into this packet.
    double episode_return = 0.0;
    /// Total steps over those episodes.
    int episode_length = 0;
    int episodes = 1;

    std::span<const double> grad_phi() const { return std::span(grad).first(phi_size); }
    std::span<const double> grad_beta() const { return std::span(grad).subspan(phi_size); }

    bool finite() const;
    double norm() const;
};

/// Generates theta once, then samples actions until the episode ends.
Trajectory run_episode(const PolicyGenerator& generator, std::span<const double> params, Rng& rng,
                       std::uint64_t env_seed = 0);

/// G_t = r_t + gamma * G_{t+1}. Throws ConfigError for gamma outside [0, 1].
std::vector<double> compute_returns(std::span<const double> rewards, double gamma);

/// Zero mean, unit variance. Constant inputs map to zeros.
std::vector<double> standardize(std::span<const double> values);

/**
 * (1/T) sum_t grad log pi(a_t | s_t) * G_t, pulled back to the trainable
 * vector. With `normalize`, G is standardized first (only when T >= 2).
 * Throws PoisonedPacketError on non-finite output.
 */
GradientPacket episode_gradient(const PolicyGenerator& generator, std::span<const double> params,
                                const Trajectory& traj, double gamma, bool normalize);

struct TrainerSettings {
    double gamma = 0.99;
    bool normalize_returns = true;
    /// Larger rates push many seeds into an always-failing policy, where every
    /// REINFORCE gradient is zero and training cannot recover.
    double learning_rate = 0.001;
    OptimizerKind optimizer = OptimizerKind::kAdam;
    std::size_t episodes_per_round = 1;
    std::size_t max_rounds = 5000;
    double target_reward = 0.8;
    std::size_t target_window = 50;
    bool stop_at_target = false;
    std::uint64_t base_seed = 0;

    void validate() const;
};

/// Runs `episodes` episodes from `rng` and folds them into one packet (mean gradient).
GradientPacket collect_packet(const PolicyGenerator& generator, std::span<const double> params,
                              Rng& rng, std::size_t episodes, double gamma, bool normalize,
                              std::size_t agent);

using RoundObserver = std::function<void(const RoundRecord&, std::span<const double> params)>;

/// Plain single-agent loop: collect, step the optimizer, record. Agent seed is base_seed.
TrainingHistory train_single_agent(const TrainerSettings& settings,
                                   const PolicyGenerator& generator, std::vector<double>& params,
                                   const RoundObserver& observer = {});

} // namespace dqtrl
