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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dqtrl/errors.hpp"
#include "dqtrl/oracles.hpp"
#include "dqtrl/rng.hpp"
#include "dqtrl/trainer.hpp"

using namespace dqtrl;

namespace {

const PolicyTopology kTiny{2, 2, 3, Activation::kTanh};

Trajectory tiny_trajectory(const PolicyGenerator& gen, std::span<const double> params) {
    Trajectory traj;
    traj.theta = gen.generate(params);
    traj.observations = {{0.1, 0.9}, {0.5, 0.2}, {0.8, 0.4}};
    traj.actions = {2, 0, 1};
    traj.rewards = {0.0, 0.0, 1.0};
    return traj;
}

QtPolicyGenerator tiny_generator(GradientMethod m = GradientMethod::kParameterShift) {
    return QtPolicyGenerator(QtShape::for_generated(kTiny.num_params(), 2), kTiny, m);
}

} // namespace

TEST(Returns, BackwardRecursion) {
    const std::vector<double> r{0.0, 0.0, 1.0};
    const auto g = compute_returns(r, 0.9);
    EXPECT_NEAR(g[0], 0.81, 1e-15);
    EXPECT_NEAR(g[1], 0.9, 1e-15);
    EXPECT_EQ(g[2], 1.0);
}

TEST(Returns, ZeroRewardsGiveZeroReturns) {
    for (double v : compute_returns(std::vector<double>(7, 0.0), 0.99)) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(Returns, GammaEdgeCases) {
    const std::vector<double> r{1.0, 2.0, 3.0};
    EXPECT_EQ(compute_returns(r, 0.0), r);
    EXPECT_EQ(compute_returns(r, 1.0), (std::vector<double>{6.0, 5.0, 3.0}));
    EXPECT_THROW(compute_returns(r, 1.5), ConfigError);
    EXPECT_THROW(compute_returns(r, -0.1), ConfigError);
    EXPECT_THROW(compute_returns(std::vector<double>{}, 0.9), ContractViolation);
}

TEST(Returns, StandardizeGivesZeroMeanUnitVariance) {
    const auto z = standardize(std::vector<double>{1.0, 2.0, 4.0, 9.0});
    double mean = 0.0;
    double var = 0.0;
    for (double v : z) mean += v / 4;
    for (double v : z) var += (v - mean) * (v - mean) / 4;
    EXPECT_NEAR(mean, 0.0, 1e-15);
    EXPECT_NEAR(var, 1.0, 1e-6);
}

TEST(Returns, StandardizeConstantStaysFinite) {
    for (double v : standardize(std::vector<double>(5, 0.3))) {
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_EQ(v, 0.0);
    }
}

TEST(EpisodeGradient, ZeroRewardsGiveZeroPacket) {
    const auto gen = tiny_generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 1);
    Trajectory traj = tiny_trajectory(gen, model.params());
    traj.rewards = {0.0, 0.0, 0.0};
    for (bool normalize : {false, true}) {
        for (double g : episode_gradient(gen, model.params(), traj, 0.99, normalize).grad) {
            EXPECT_EQ(g, 0.0);
        }
    }
}

TEST(EpisodeGradient, ZeroMapperKillsAngleGradient) {
    const auto gen = tiny_generator();
    std::vector<double> params(gen.num_trainable(), 0.0);
    for (std::size_t i = 0; i < gen.num_quantum(); ++i) {
        params[i] = 0.1 * static_cast<double>(i);
    }
    const Trajectory traj = tiny_trajectory(gen, params);
    const GradientPacket p = episode_gradient(gen, params, traj, 0.99, false);
    for (double g : p.grad_phi()) {
        EXPECT_EQ(g, 0.0);
    }
}

TEST(EpisodeGradient, FrozenTrajectoryMatchesFiniteDifference) {
    const auto gen = tiny_generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 3);
    const Trajectory traj = tiny_trajectory(gen, model.params());
    for (bool normalize : {false, true}) {
        auto weights = compute_returns(traj.rewards, 0.9);
        if (normalize) {
            weights = standardize(weights);
        }
        const auto objective = [&](std::span<const double> p) {
            const auto theta = gen.generate(p);
            double s = 0.0;
            for (std::size_t t = 0; t < 3; ++t) {
                s += std::log(oracle::policy_forward(kTiny, theta, traj.observations[t])[traj.actions[t]]) *
                     weights[t];
            }
            return s / 3.0;
        };
        const auto fd = oracle::central_difference(objective, model.params(), 1e-6);
        for (auto m : {GradientMethod::kParameterShift, GradientMethod::kAdjoint}) {
            const auto packet = episode_gradient(tiny_generator(m), model.params(), traj, 0.9, normalize);
            EXPECT_EQ(packet.phi_size, gen.num_quantum());
            for (std::size_t i = 0; i < fd.size(); ++i) {
                EXPECT_NEAR(packet.grad[i], fd[i], 1e-5) << "param " << i;
            }
        }
    }
}

TEST(EpisodeGradient, DirectGeneratorIsIdentity) {
    const DirectPolicyGenerator gen(kTiny);
    Rng rng(4);
    std::vector<double> theta(kTiny.num_params());
    for (double& x : theta) x = rng.uniform(-1, 1);
    EXPECT_EQ(gen.generate(theta), theta);
    const Trajectory traj = tiny_trajectory(gen, theta);
    const auto packet = episode_gradient(gen, theta, traj, 0.9, false);
    std::vector<double> expected(theta.size(), 0.0);
    const auto g = compute_returns(traj.rewards, 0.9);
    for (std::size_t t = 0; t < 3; ++t) {
        accumulate_logpi_grad(kTiny, theta, traj.observations[t], traj.actions[t], g[t] / 3.0, expected);
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(packet.grad[i], expected[i], 1e-15);
    }
}

TEST(EpisodeGradient, NonFiniteIsPoisoned) {
    const DirectPolicyGenerator gen(kTiny);
    std::vector<double> theta(kTiny.num_params(), 0.0);
    Trajectory traj = tiny_trajectory(gen, theta);
    traj.rewards[2] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(episode_gradient(gen, theta, traj, 0.9, false), PoisonedPacketError);
}

TEST(EpisodeGradient, RejectsEmptyTrajectory) {
    const DirectPolicyGenerator gen(kTiny);
    const std::vector<double> theta(kTiny.num_params(), 0.0);
    Trajectory traj;
    traj.theta = theta;
    EXPECT_THROW(episode_gradient(gen, theta, traj, 0.9, false), ContractViolation);
}

TEST(RunEpisode, RecordsConsistentTrajectory) {
    const PolicyTopology topo = PolicyTopology::generated_default();
    const QtPolicyGenerator gen(QtShape::for_generated(909, 3), topo);
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 5);
    Rng a(9);
    Rng b(9);
    const Trajectory t1 = run_episode(gen, model.params(), a);
    const Trajectory t2 = run_episode(gen, model.params(), b);
    EXPECT_EQ(t1.actions, t2.actions);
    EXPECT_EQ(t1.rewards, t2.rewards);
    EXPECT_GE(t1.length(), 1u);
    EXPECT_LE(t1.length(), 100u);
    EXPECT_EQ(t1.observations.size(), t1.length());
    EXPECT_EQ(t1.observations[0].size(), 147u);
    for (std::size_t t = 0; t + 1 < t1.length(); ++t) {
        EXPECT_EQ(t1.rewards[t], 0.0);
    }
}

// With normalization off and gamma 0.99, gradients stay finite for many
// episodes from an untrained model.
TEST(EpisodeGradient, RawReturnsStayFinite) {
    const PolicyTopology topo = PolicyTopology::generated_default();
    const QtPolicyGenerator gen(QtShape::for_generated(909, 3), topo);
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 6);
    Rng rng(6);
    for (int e = 0; e < 100; ++e) {
        const Trajectory traj = run_episode(gen, model.params(), rng);
        EXPECT_TRUE(episode_gradient(gen, model.params(), traj, 0.99, false).finite());
    }
}

TEST(CollectPacket, AveragesEpisodes) {
    const PolicyTopology topo = PolicyTopology::generated_default();
    const DirectPolicyGenerator direct(topo);
    Rng init(1);
    const auto theta = init_policy_params(topo, init);
    Rng r1(3);
    const GradientPacket both = collect_packet(direct, theta, r1, 2, 0.99, true, 5);
    Rng r2(3);
    const auto a = episode_gradient(direct, theta, run_episode(direct, theta, r2), 0.99, true);
    const auto b = episode_gradient(direct, theta, run_episode(direct, theta, r2), 0.99, true);
    EXPECT_EQ(both.agent, 5u);
    EXPECT_EQ(both.episodes, 2);
    EXPECT_EQ(both.episode_length, a.episode_length + b.episode_length);
    for (std::size_t i = 0; i < both.grad.size(); i += 50) {
        EXPECT_NEAR(both.grad[i], 0.5 * (a.grad[i] + b.grad[i]), 1e-15);
    }
}

TEST(TrainSingleAgent, ZeroRoundsLeavesParameters) {
    const auto gen = tiny_generator();
    TrainerSettings s;
    s.max_rounds = 0;
    std::vector<double> params(gen.num_trainable(), 0.25);
    const auto before = params;
    const TrainingHistory h = train_single_agent(s, gen, params);
    EXPECT_TRUE(h.empty());
    EXPECT_EQ(params, before);
}

TEST(TrainSingleAgent, RejectsBadSettings) {
    const auto gen = tiny_generator();
    std::vector<double> params(gen.num_trainable(), 0.0);
    TrainerSettings s;
    s.learning_rate = 0.0;
    EXPECT_THROW(train_single_agent(s, gen, params), ConfigError);
    s = TrainerSettings{};
    s.episodes_per_round = 0;
    EXPECT_THROW(train_single_agent(s, gen, params), ConfigError);
    std::vector<double> wrong(3);
    EXPECT_THROW(train_single_agent(TrainerSettings{}, gen, wrong), DimensionError);
}
