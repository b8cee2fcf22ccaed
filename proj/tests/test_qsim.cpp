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
#include <numbers>

#include "dqtrl/errors.hpp"
#include "dqtrl/oracles.hpp"
#include "dqtrl/qsim.hpp"
#include "dqtrl/rng.hpp"

using namespace dqtrl;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

void expect_state_near(const StateVector& s, const std::vector<Complex>& expected, double tol) {
    ASSERT_EQ(s.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, tol) << "amplitude " << i;
    }
}

} // namespace

TEST(StateVector, StartsInAllZeroBasisState) {
    const StateVector s(3);
    EXPECT_EQ(s.size(), 8u);
    EXPECT_EQ(s[0], Complex(1.0, 0.0));
    for (std::size_t i = 1; i < 8; ++i) {
        EXPECT_EQ(s[i], Complex(0.0, 0.0));
    }
}

TEST(StateVector, RejectsBadQubitCounts) {
    EXPECT_THROW(StateVector(0), Error);
    EXPECT_THROW(StateVector::from_amplitudes(std::vector<Complex>(3)), Error);
}

TEST(Gates, U3OnZeroGivesCosAndPhasedSin) {
    StateVector s(1);
    apply_u3(s, 0, 0.7, 0.3, -1.1);
    expect_state_near(s, {std::cos(0.35), std::polar(std::sin(0.35), 0.3)}, 1e-15);
}

TEST(Gates, U3PiZeroPiIsPauliX) {
    StateVector s(1);
    apply_u3(s, 0, kPi, 0.0, kPi);
    expect_state_near(s, {0.0, 1.0}, 1e-15);
}

TEST(Gates, HadamardLikeU3MakesUniformSuperposition) {
    StateVector s(1);
    apply_u3(s, 0, kPi / 2, 0.0, kPi);
    const auto p = probabilities(s);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
}

TEST(Gates, QubitZeroIsMostSignificant) {
    StateVector s(2);
    apply_u3(s, 0, kPi, 0.0, kPi);
    EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-15);
}

TEST(Gates, CnotTruthTable) {
    for (std::size_t input = 0; input < 4; ++input) {
        std::vector<Complex> amps(4);
        amps[input] = 1.0;
        StateVector s = StateVector::from_amplitudes(amps);
        apply_cnot(s, 0, 1);
        const std::size_t expected = (input & 2) ? (input ^ 1) : input;
        EXPECT_EQ(s[expected], Complex(1.0)) << "input " << input;
    }
}

TEST(Gates, BellState) {
    StateVector s(2);
    apply_u3(s, 0, kPi / 2, 0.0, kPi);
    apply_cnot(s, 0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    expect_state_near(s, {r, 0.0, 0.0, r}, 1e-15);
}

TEST(Gates, RejectsBadIndices) {
    StateVector s(2);
    EXPECT_THROW(apply_u3(s, 2, 0.1, 0.2, 0.3), IndexError);
    EXPECT_THROW(apply_u3(s, -1, 0.1, 0.2, 0.3), IndexError);
    EXPECT_THROW(apply_cnot(s, 0, 2), IndexError);
    EXPECT_THROW(apply_cnot(s, 1, 1), InvalidGateError);
}

TEST(Gates, U3IsUnitary) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Matrix2 u = u3_matrix(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4));
        // U^dagger U = I
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                const Complex v = std::conj(u[r]) * u[c] + std::conj(u[2 + r]) * u[2 + c];
                EXPECT_NEAR(std::abs(v - Complex(r == c ? 1.0 : 0.0)), 0.0, 1e-14);
            }
        }
    }
}

TEST(Gates, U3DerivativesMatchFiniteDifference) {
    const double a[3] = {0.4, -1.3, 2.2};
    const auto d = u3_derivatives(a[0], a[1], a[2]);
    const double eps = 1e-6;
    for (int j = 0; j < 3; ++j) {
        double plus[3] = {a[0], a[1], a[2]};
        double minus[3] = {a[0], a[1], a[2]};
        plus[j] += eps;
        minus[j] -= eps;
        const Matrix2 up = u3_matrix(plus[0], plus[1], plus[2]);
        const Matrix2 um = u3_matrix(minus[0], minus[1], minus[2]);
        for (int e = 0; e < 4; ++e) {
            EXPECT_NEAR(std::abs((up[e] - um[e]) / (2 * eps) - d[j][e]), 0.0, 1e-9);
        }
    }
}

TEST(Ansatz, ZeroAnglesLeaveAllZeroState) {
    const AnsatzShape shape{4, 3};
    const std::vector<double> angles(shape.num_angles(), 0.0);
    const auto p = probabilities(run_ansatz(shape, angles));
    EXPECT_DOUBLE_EQ(p[0], 1.0);
}

TEST(Ansatz, SingleQubitHasNoEntangler) {
    const AnsatzShape shape{1, 2};
    const std::vector<double> angles{0.3, 0.1, 0.2, 0.5, -0.4, 0.9};
    StateVector manual(1);
    apply_u3(manual, 0, 0.3, 0.1, 0.2);
    apply_u3(manual, 0, 0.5, -0.4, 0.9);
    const StateVector s = run_ansatz(shape, angles);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(std::abs(s[i] - manual[i]), 0.0, 1e-15);
    }
}

TEST(Ansatz, RejectsWrongAngleCount) {
    EXPECT_THROW(run_ansatz({3, 2}, std::vector<double>(17)), DimensionError);
}

TEST(Ansatz, MatchesDenseUnitaryOracle) {
    Rng rng(11);
    for (int c = 0; c < 50; ++c) {
        const AnsatzShape shape{1 + c % 4, 1 + c % 3};
        const auto angles = random_vector(rng, shape.num_angles(), -kPi, kPi);
        const StateVector fast = run_ansatz(shape, angles);
        const auto slow = oracle::ansatz_state(shape, angles);
        for (std::size_t i = 0; i < slow.size(); ++i) {
            ASSERT_NEAR(std::abs(fast[i] - slow[i]), 0.0, 1e-10) << "case " << c;
        }
    }
}

// Property: the state norm survives deep circuits on many qubits.
TEST(Ansatz, NormPreservedOnDeepCircuits) {
    Rng rng(12);
    for (int n : {2, 6, 10, 12}) {
        const AnsatzShape shape{n, 13};
        const auto s = run_ansatz(shape, random_vector(rng, shape.num_angles(), -10, 10));
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12) << "n=" << n;
    }
}

TEST(Gradient, ShiftRuleMatchesFiniteDifferenceSmallCase) {
    Rng rng(13);
    const AnsatzShape shape{3, 2};
    const auto angles = random_vector(rng, shape.num_angles(), -kPi, kPi);
    const auto weights = random_vector(rng, shape.dimension(), -1, 1);
    const auto grad = weighted_prob_gradient(shape, angles, weights, GradientMethod::kParameterShift);
    const auto fd = oracle::central_difference(
        [&](std::span<const double> a) { return weighted_prob_sum(shape, a, weights); }, angles, 1e-5);
    for (std::size_t i = 0; i < grad.size(); ++i) {
        EXPECT_NEAR(grad[i], fd[i], 1e-6) << "angle " << i;
    }
}

TEST(Gradient, AdjointAgreesWithShiftRule) {
    Rng rng(14);
    for (int n = 1; n <= 7; ++n) {
        const AnsatzShape shape{n, 1 + n % 3};
        const auto angles = random_vector(rng, shape.num_angles(), -kPi, kPi);
        const auto weights = random_vector(rng, shape.dimension(), -1, 1);
        const auto a = weighted_prob_gradient(shape, angles, weights, GradientMethod::kAdjoint);
        const auto b = weighted_prob_gradient(shape, angles, weights, GradientMethod::kParameterShift);
        for (std::size_t i = 0; i < a.size(); ++i) {
            ASSERT_NEAR(a[i], b[i], 1e-9) << "n=" << n << " angle " << i;
        }
    }
}

// Uniform weights: sum_i p_i = 1 for every angle, so the gradient vanishes.
TEST(Gradient, ConstantWeightsGiveZeroGradient) {
    Rng rng(15);
    const AnsatzShape shape{4, 2};
    const auto angles = random_vector(rng, shape.num_angles(), -kPi, kPi);
    const std::vector<double> weights(shape.dimension(), 0.7);
    for (auto method : {GradientMethod::kParameterShift, GradientMethod::kAdjoint}) {
        for (double g : weighted_prob_gradient(shape, angles, weights, method)) {
            EXPECT_NEAR(g, 0.0, 1e-13);
        }
    }
}

TEST(Gradient, RejectsWrongWeightCount) {
    const AnsatzShape shape{2, 1};
    EXPECT_THROW(weighted_prob_gradient(shape, std::vector<double>(6), std::vector<double>(3)),
                 DimensionError);
}
