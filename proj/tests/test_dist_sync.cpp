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

#include <atomic>
#include <cmath>
#include <limits>

#include "dqtrl/dist_sync.hpp"
#include "dqtrl/errors.hpp"
#include "dqtrl/optimizer.hpp"
#include "dqtrl/qt_gen.hpp"

using namespace dqtrl;

namespace {

GradientPacket packet(std::size_t agent, std::vector<double> grad) {
    GradientPacket p;
    p.agent = agent;
    p.grad = std::move(grad);
    return p;
}

SyncConfig small_config(std::size_t agents, std::size_t rounds, bool sequential) {
    SyncConfig c;
    c.num_agents = agents;
    c.sequential = sequential;
    c.trainer.max_rounds = rounds;
    c.trainer.base_seed = 17;
    c.trainer.learning_rate = 0.01;
    return c;
}

QtPolicyGenerator generator() {
    return QtPolicyGenerator(QtShape::for_generated(909, 3), PolicyTopology::generated_default());
}

// Delegates to a real generator but throws from the pullback of the Nth call.
class FailingGenerator final : public PolicyGenerator {
  public:
    FailingGenerator(const PolicyGenerator& inner, int fail_at) : inner_(inner), fail_at_(fail_at) {}
    const PolicyTopology& topology() const override { return inner_.topology(); }
    std::size_t num_trainable() const override { return inner_.num_trainable(); }
    std::size_t num_quantum() const override { return inner_.num_quantum(); }
    std::vector<double> generate(std::span<const double> p) const override { return inner_.generate(p); }
    std::vector<double> pullback(std::span<const double> p, std::span<const double> g) const override {
        if (calls_.fetch_add(1) == fail_at_) {
            throw std::runtime_error("simulated device failure");
        }
        return inner_.pullback(p, g);
    }

  private:
    const PolicyGenerator& inner_;
    int fail_at_;
    mutable std::atomic<int> calls_{0};
};

} // namespace

TEST(Average, ElementwiseMean) {
    const std::vector<GradientPacket> ps{packet(0, {1.0, 3.0}), packet(1, {3.0, 1.0})};
    EXPECT_EQ(average_gradients(ps), (std::vector<double>{2.0, 2.0}));
}

TEST(Average, SinglePacketIsIdentity) {
    const std::vector<GradientPacket> ps{packet(0, {0.1, -0.7, 1e-300})};
    EXPECT_EQ(average_gradients(ps), ps[0].grad);
}

// Summation runs in agent-index order, so arrival order cannot change a bit.
TEST(Average, PermutationInvariantToTheBit) {
    std::vector<GradientPacket> ps{packet(0, {0.1, 1e16}), packet(1, {0.2, 1.0}),
                                   packet(2, {0.3, -1e16}), packet(3, {1e-17, 3.0})};
    const auto reference = average_gradients(ps);
    std::vector<GradientPacket> shuffled{ps[2], ps[0], ps[3], ps[1]};
    EXPECT_EQ(average_gradients(shuffled), reference);
    std::vector<GradientPacket> reversed{ps[3], ps[2], ps[1], ps[0]};
    EXPECT_EQ(average_gradients(reversed), reference);
}

TEST(Average, ProtocolErrors) {
    EXPECT_THROW(average_gradients({}), ProtocolError);
    const std::vector<GradientPacket> dup{packet(0, {1.0}), packet(0, {2.0})};
    EXPECT_THROW(average_gradients(dup), ProtocolError);
    const std::vector<GradientPacket> ragged{packet(0, {1.0}), packet(1, {2.0, 3.0})};
    EXPECT_THROW(average_gradients(ragged), ProtocolError);
    const std::vector<GradientPacket> nan{packet(0, {1.0}), packet(1, {std::nan("")})};
    EXPECT_THROW(average_gradients(nan), PoisonedPacketError);
}

TEST(SyncRound, PlainAscentExample) {
    std::vector<double> params{0.0, 0.0};
    Optimizer opt(OptimizerKind::kPlainAscent, 0.1, 2);
    const std::vector<GradientPacket> ps{packet(0, {1.0, 3.0}), packet(1, {3.0, 1.0})};
    sync_round(params, ps, opt);
    EXPECT_NEAR(params[0], 0.2, 1e-15);
    EXPECT_NEAR(params[1], 0.2, 1e-15);
}

TEST(SyncRound, ZeroPacketsLeaveParametersInPlainMode) {
    std::vector<double> params{0.5, -1.5};
    Optimizer opt(OptimizerKind::kPlainAscent, 0.1, 2);
    const std::vector<GradientPacket> ps{packet(0, {0.0, 0.0}), packet(1, {0.0, 0.0})};
    sync_round(params, ps, opt);
    EXPECT_EQ(params, (std::vector<double>{0.5, -1.5}));
}

TEST(SyncRound, RejectsLengthMismatch) {
    std::vector<double> params{0.0, 0.0, 0.0};
    Optimizer opt(OptimizerKind::kPlainAscent, 0.1, 3);
    const std::vector<GradientPacket> ps{packet(0, {1.0, 3.0})};
    EXPECT_THROW(sync_round(params, ps, opt), ProtocolError);
}

TEST(Adam, FirstStepMovesByLearningRate) {
    Optimizer opt(OptimizerKind::kAdam, 0.01, 3);
    std::vector<double> params{0.0, 0.0, 0.0};
    opt.ascend(params, std::vector<double>{2.0, -0.5, 0.0});
    EXPECT_NEAR(params[0], 0.01, 1e-9);
    EXPECT_NEAR(params[1], -0.01, 1e-9);
    EXPECT_EQ(params[2], 0.0);
    EXPECT_EQ(opt.steps(), 1u);
}

TEST(Optimizer, Names) {
    EXPECT_EQ(parse_optimizer("adam"), OptimizerKind::kAdam);
    EXPECT_EQ(parse_optimizer("plain"), OptimizerKind::kPlainAscent);
    EXPECT_EQ(parse_optimizer(to_string(OptimizerKind::kPlainAscent)), OptimizerKind::kPlainAscent);
    EXPECT_THROW(parse_optimizer("rmsprop"), ConfigError);
}

TEST(Distributed, SingleAgentMatchesSingleAgentTrainerBitForBit) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 3);
    const SyncConfig config = small_config(1, 30, false);
    std::vector<double> a(model.params().begin(), model.params().end());
    std::vector<double> b = a;
    const TrainingHistory ha = train_single_agent(config.trainer, gen, a);
    const TrainingHistory hb = train_distributed(config, gen, b);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(same_trajectory(ha, hb));
}

TEST(Distributed, ThreadedMatchesSequential) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 4);
    std::vector<double> a(model.params().begin(), model.params().end());
    std::vector<double> b = a;
    const TrainingHistory ha = train_distributed(small_config(4, 15, true), gen, a);
    const TrainingHistory hb = train_distributed(small_config(4, 15, false), gen, b);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(same_trajectory(ha, hb));
}

TEST(Distributed, CollectionOrderDoesNotChangeTrajectory) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 5);
    std::vector<double> a(model.params().begin(), model.params().end());
    std::vector<double> b = a;
    std::vector<std::vector<double>> thetas_a;
    std::vector<std::vector<double>> thetas_b;
    auto record = [](std::vector<std::vector<double>>& out) {
        return [&out](const RoundRecord&, std::span<const double> p) { out.emplace_back(p.begin(), p.end()); };
    };
    SyncConfig ordered = small_config(4, 12, true);
    SyncConfig permuted = ordered;
    permuted.collection_order = {3, 1, 0, 2};
    train_distributed(ordered, gen, a, record(thetas_a));
    train_distributed(permuted, gen, b, record(thetas_b));
    EXPECT_EQ(thetas_a, thetas_b);
}

TEST(Distributed, AgentsUseDistinctSeeds) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 6);
    std::vector<double> params(model.params().begin(), model.params().end());
    const TrainingHistory h = train_distributed(small_config(4, 5, true), gen, params);
    bool differ = false;
    for (const RoundRecord& r : h.rounds()) {
        ASSERT_EQ(r.agent_returns.size(), 4u);
        for (std::size_t i = 1; i < 4; ++i) {
            differ = differ || r.agent_lengths[i] != r.agent_lengths[0];
        }
    }
    EXPECT_TRUE(differ);
}

TEST(Distributed, AgentFailureAbortsTheRound) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 7);
    for (bool sequential : {true, false}) {
        const FailingGenerator failing(gen, 6);
        std::vector<double> params(model.params().begin(), model.params().end());
        EXPECT_THROW(train_distributed(small_config(4, 10, sequential), failing, params), RoundAborted);
    }
}

TEST(Distributed, RejectsBadConfig) {
    const auto gen = generator();
    std::vector<double> params(gen.num_trainable(), 0.0);
    EXPECT_THROW(train_distributed(small_config(0, 1, true), gen, params), ConfigError);
    SyncConfig bad = small_config(3, 1, true);
    bad.collection_order = {0, 0, 1};
    EXPECT_THROW(train_distributed(bad, gen, params), ConfigError);
}

TEST(Distributed, StopsAtTarget) {
    const auto gen = generator();
    const GlobalModel model = GlobalModel::initialize(gen.shape(), 8);
    SyncConfig c = small_config(2, 500, true);
    c.trainer.stop_at_target = true;
    c.trainer.target_reward = 0.01;
    c.trainer.target_window = 3;
    std::vector<double> params(model.params().begin(), model.params().end());
    const TrainingHistory h = train_distributed(c, gen, params);
    ASSERT_FALSE(h.empty());
    EXPECT_LT(h.size(), 500u);
    EXPECT_GE(*h.trailing_mean(3), 0.01);
}
