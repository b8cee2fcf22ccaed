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

#include "dqtrl/errors.hpp"
#include "dqtrl/mapper.hpp"
#include "dqtrl/oracles.hpp"
#include "dqtrl/rng.hpp"

using namespace dqtrl;

TEST(Mapper, ParameterCountForTenQubits) {
    EXPECT_EQ(MappingShape{10}.num_params(), 241u);
    EXPECT_EQ(MappingShape{10}.input_width(), 11u);
    EXPECT_EQ(MappingShape{1}.num_params(), 2u * 10 + 10 + 110 + 11);
}

TEST(Mapper, BitsAreSignedMostSignificantFirst) {
    std::vector<double> bits(3);
    encode_bits(3, 0b110, bits);
    EXPECT_EQ(bits, (std::vector<double>{1.0, 1.0, -1.0}));
    const MapInput in = MapInput::for_basis_state(3, 1, 0.25);
    EXPECT_EQ(in.bits, (std::vector<double>{-1.0, -1.0, 1.0}));
    EXPECT_DOUBLE_EQ(in.scaled_prob, 2.0);
}

TEST(Mapper, ZeroParametersGiveZeroOutput) {
    const MappingShape shape{4};
    const std::vector<double> beta(shape.num_params(), 0.0);
    EXPECT_EQ(map_forward(shape, beta, MapInput::for_basis_state(4, 5, 0.1)), 0.0);
}

TEST(Mapper, ZeroParametersKillEveryPathButTheOutputBias) {
    const MappingShape shape{3};
    const std::vector<double> beta(shape.num_params(), 0.0);
    const MapGradient g = map_backward(shape, beta, MapInput::for_basis_state(3, 2, 0.3), 1.5);
    EXPECT_EQ(g.prob, 0.0);
    for (std::size_t i = 0; i + 1 < g.beta.size(); ++i) {
        EXPECT_EQ(g.beta[i], 0.0) << i;
    }
    EXPECT_EQ(g.beta.back(), 1.5);
}

TEST(Mapper, InitWithinFanInBounds) {
    Rng rng(3);
    const MappingShape shape{10};
    const auto beta = init_mapping_params(shape, rng);
    ASSERT_EQ(beta.size(), 241u);
    // First layer (and its bias) uses fan_in = 11, later layers fan_in = 10.
    const std::size_t first = 11 * 10 + 10;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const double bound = 1.0 / std::sqrt(i < first ? 11.0 : 10.0);
        EXPECT_LE(std::abs(beta[i]), bound) << i;
    }
}

TEST(Mapper, ForwardMatchesOracle) {
    Rng rng(4);
    for (int n = 1; n <= 8; ++n) {
        const MappingShape shape{n};
        const auto beta = init_mapping_params(shape, rng);
        const std::size_t index = rng.next_u64() % (std::size_t{1} << n);
        const double p = rng.uniform();
        EXPECT_NEAR(map_forward(shape, beta, MapInput::for_basis_state(n, index, p)),
                    oracle::map_forward(n, beta, index, p), 1e-12);
    }
}

TEST(Mapper, BackwardMatchesFiniteDifference) {
    Rng rng(5);
    const MappingShape shape{3};
    const auto beta = init_mapping_params(shape, rng);
    const MapInput in = MapInput::for_basis_state(3, 6, 0.2);
    const MapGradient g = map_backward(shape, beta, in, 1.0);
    const auto fd = oracle::central_difference(
        [&](std::span<const double> b) { return map_forward(shape, b, in); }, beta, 1e-6);
    for (std::size_t i = 0; i < fd.size(); ++i) {
        EXPECT_NEAR(g.beta[i], fd[i], 1e-6 * std::max(1.0, std::abs(fd[i])));
    }
    const double h = 1e-6;
    const double fd_p = (map_forward(shape, beta, MapInput::for_basis_state(3, 6, 0.2 + h)) -
                         map_forward(shape, beta, MapInput::for_basis_state(3, 6, 0.2 - h))) /
                        (2 * h);
    EXPECT_NEAR(g.prob, fd_p, 1e-6 * std::max(1.0, std::abs(fd_p)));
}

TEST(Mapper, AccumulateAddsIntoExistingGradient) {
    Rng rng(6);
    const MappingShape shape{2};
    const auto beta = init_mapping_params(shape, rng);
    const MapInput in = MapInput::for_basis_state(2, 1, 0.4);
    std::vector<double> acc(shape.num_params(), 1.0);
    map_backward_accumulate(shape, beta, in.bits, in.scaled_prob, 0.5, acc);
    const MapGradient g = map_backward(shape, beta, in, 0.5);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        EXPECT_NEAR(acc[i], 1.0 + g.beta[i], 1e-15);
    }
}

TEST(Mapper, MapAllProducesOneValuePerIndex) {
    Rng rng(7);
    const MappingShape shape{3};
    const auto beta = init_mapping_params(shape, rng);
    const std::vector<double> probs{0.1, 0.2, 0.05, 0.15, 0.1, 0.2, 0.1, 0.1};
    const auto theta = map_all(shape, beta, probs, 5);
    ASSERT_EQ(theta.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_DOUBLE_EQ(theta[i], map_forward(shape, beta, MapInput::for_basis_state(3, i, probs[i])));
    }
}

TEST(Mapper, MapAllRejectsBadSizes) {
    const MappingShape shape{2};
    const std::vector<double> beta(shape.num_params(), 0.1);
    EXPECT_THROW(map_all(shape, beta, std::vector<double>(4, 0.25), 5), CapacityError);
    EXPECT_THROW(map_all(shape, beta, std::vector<double>(3, 0.25), 2), DimensionError);
    EXPECT_THROW(map_all(shape, std::vector<double>(5), std::vector<double>(4, 0.25), 2), DimensionError);
}
