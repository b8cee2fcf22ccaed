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
#include <cstring>
#include <filesystem>
#include <numbers>

#include "dqtrl/checkpoint.hpp"
#include "dqtrl/config.hpp"
#include "dqtrl/errors.hpp"
#include "dqtrl/qt_gen.hpp"
#include "dqtrl/rng.hpp"

using namespace dqtrl;

namespace {

Checkpoint quantum_checkpoint(std::uint64_t seed) {
    const QtShape shape = QtShape::for_generated(909, 3);
    const GlobalModel model = GlobalModel::initialize(shape, seed);
    Checkpoint c;
    c.mode = Mode::kQtrlDistributed;
    c.qubits = shape.qubits;
    c.blocks = shape.blocks;
    c.generated = shape.generated;
    c.topology = PolicyTopology::generated_default();
    c.seed = seed;
    c.params.assign(model.params().begin(), model.params().end());
    return c;
}

} // namespace

TEST(Config, DefaultsAreValid) {
    const ExperimentConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.effective_max_rounds(), 2000u);
    EXPECT_EQ(c.effective_agents(), 4u);
    ExperimentConfig centric = c;
    centric.mode = Mode::kQtrlCentric;
    EXPECT_EQ(centric.effective_max_rounds(), 5000u);
    EXPECT_EQ(centric.effective_agents(), 1u);
}

TEST(Config, ModeNames) {
    for (Mode m : {Mode::kClassicalBaseline, Mode::kQtrlCentric, Mode::kQtrlDistributed}) {
        EXPECT_EQ(parse_mode(to_string(m)), m);
    }
    EXPECT_THROW(parse_mode("quantum"), ConfigError);
    EXPECT_EQ(parse_gradient_method("parameter-shift"), GradientMethod::kParameterShift);
    EXPECT_THROW(parse_gradient_method("backprop"), ConfigError);
}

TEST(Config, ParseOverridesBase) {
    ExperimentConfig base;
    base.seed = 9;
    const ExperimentConfig c = parse_config(
        R"({"mode": "qtrl-centric", "layers": 13, "learning_rate": 0.002, "normalize_returns": false,
            "optimizer": "plain", "max_rounds": 0, "speedup_agents": [2, 4]})",
        base);
    EXPECT_EQ(c.mode, Mode::kQtrlCentric);
    EXPECT_EQ(c.layers, 13);
    EXPECT_DOUBLE_EQ(c.learning_rate, 0.002);
    EXPECT_FALSE(c.normalize_returns);
    EXPECT_EQ(c.optimizer, OptimizerKind::kPlainAscent);
    EXPECT_EQ(c.effective_max_rounds(), 0u);
    EXPECT_EQ(c.speedup_agents, (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(c.seed, 9u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("{not json"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
    EXPECT_THROW(parse_config(R"({"layer": 3})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"layers": "three"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"layers": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"gamma": 1.5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"learning_rate": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"agents": 0})"), ConfigError);
}

TEST(Config, JsonRoundTrip) {
    ExperimentConfig c;
    c.mode = Mode::kClassicalBaseline;
    c.layers = 7;
    c.max_rounds = 123;
    c.seed = 77;
    c.activation = Activation::kRelu;
    c.gradient = GradientMethod::kParameterShift;
    const ExperimentConfig back = parse_config(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(back.max_rounds, c.max_rounds);
    EXPECT_EQ(back.activation, Activation::kRelu);
}

TEST(Checkpoint, WrapAngle) {
    const double two_pi = 2 * std::numbers::pi;
    EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
    EXPECT_NEAR(wrap_angle(-0.5), two_pi - 0.5, 1e-15);
    EXPECT_NEAR(wrap_angle(7.0), 7.0 - two_pi, 1e-15);
    EXPECT_GE(wrap_angle(-1e-18), 0.0);
    EXPECT_LT(wrap_angle(-1e-18), two_pi);
}

TEST(Checkpoint, RoundTripIsBitExact) {
    const Checkpoint c = quantum_checkpoint(5);
    const Checkpoint back = deserialize_checkpoint(serialize_checkpoint(c));
    EXPECT_EQ(back, c);
    ASSERT_EQ(back.params.size(), 331u);
    EXPECT_EQ(std::memcmp(back.params.data(), c.params.data(), c.params.size() * sizeof(double)), 0);
}

TEST(Checkpoint, AnglesWrappedOnSaveOnly) {
    Checkpoint c = quantum_checkpoint(6);
    c.params[0] = -1.0;
    c.params[90] = -1.0;  // first mapper weight, never wrapped
    const Checkpoint back = deserialize_checkpoint(serialize_checkpoint(c));
    EXPECT_NEAR(back.params[0], 2 * std::numbers::pi - 1.0, 1e-15);
    EXPECT_EQ(back.params[90], -1.0);
    // Wrapping by 2 pi leaves the generated policy unchanged up to rounding.
    const auto a = generate_theta(c.qt_shape(), c.params);
    const auto b = generate_theta(back.qt_shape(), back.params);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-12);
    }
}

TEST(Checkpoint, ClassicalRoundTrip) {
    Checkpoint c;
    c.mode = Mode::kClassicalBaseline;
    c.topology = PolicyTopology::classical_baseline();
    c.generated = c.topology.num_params();
    Rng rng(3);
    c.params = init_policy_params(c.topology, rng);
    c.params[0] = -4.0;  // classical weights are never wrapped
    const Checkpoint back = deserialize_checkpoint(serialize_checkpoint(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(back.expected_count(), 4835u);
}

TEST(Checkpoint, HeaderIsTextLine) {
    const std::string bytes = serialize_checkpoint(quantum_checkpoint(1));
    const std::string header = bytes.substr(0, bytes.find('\n'));
    EXPECT_EQ(header, header_line(quantum_checkpoint(1)));
    EXPECT_NE(header.find("n=10"), std::string::npos);
    EXPECT_NE(header.find("L=3"), std::string::npos);
    EXPECT_NE(header.find("k=909"), std::string::npos);
    EXPECT_EQ(bytes.size(), header.size() + 1 + 331 * sizeof(double));
}

TEST(Checkpoint, RejectsCorruptInput) {
    const std::string good = serialize_checkpoint(quantum_checkpoint(2));
    EXPECT_THROW(deserialize_checkpoint(good.substr(0, good.size() - 8)), LoadError);
    EXPECT_THROW(deserialize_checkpoint(good + "x"), LoadError);
    EXPECT_THROW(deserialize_checkpoint("garbage\n"), LoadError);
    EXPECT_THROW(deserialize_checkpoint(""), LoadError);

    std::string wrong_count = good;
    const auto pos = wrong_count.find("count=331");
    ASSERT_NE(pos, std::string::npos);
    wrong_count.replace(pos, 9, "count=330");
    EXPECT_THROW(deserialize_checkpoint(wrong_count), LoadError);

    std::string wrong_layers = good;
    wrong_layers.replace(wrong_layers.find("L=3"), 3, "L=4");
    EXPECT_THROW(deserialize_checkpoint(wrong_layers), LoadError);
}

TEST(Checkpoint, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "dqtrl_ckpt_test.ckpt";
    const Checkpoint c = quantum_checkpoint(8);
    save_checkpoint(path.string(), c);
    EXPECT_EQ(load_checkpoint(path.string()), c);
    std::filesystem::remove(path);
    EXPECT_THROW(load_checkpoint(path.string()), LoadError);
}
