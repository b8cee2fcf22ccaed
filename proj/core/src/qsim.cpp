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

#include "dqtrl/qsim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

constexpr int kMaxQubits = 20;

std::size_t bit_of(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                         std::to_string(state.num_qubits()) + "-qubit state");
    }
}

Matrix2 adjoint(const Matrix2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

// <bra| M_qubit |ket> for a single-qubit operator M.
Complex sandwich(const StateVector& bra, const Matrix2& m, const StateVector& ket, int qubit) {
    const std::size_t stride = bit_of(ket.num_qubits(), qubit);
    const auto b = bra.amplitudes();
    const auto k = ket.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::size_t base = 0; base < k.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex k0 = k[i];
            const Complex k1 = k[i + stride];
            acc += std::conj(b[i]) * (m[0] * k0 + m[1] * k1);
            acc += std::conj(b[i + stride]) * (m[2] * k0 + m[3] * k1);
        }
    }
    return acc;
}

void apply_ring(StateVector& state) {
    const int n = state.num_qubits();
    if (n == 1) {
        return;
    }
    for (int q = 0; q < n; ++q) {
        apply_cnot(state, q, (q + 1) % n);
    }
}

void apply_ring_inverse(StateVector& state) {
    const int n = state.num_qubits();
    if (n == 1) {
        return;
    }
    for (int q = n - 1; q >= 0; --q) {
        apply_cnot(state, q, (q + 1) % n);
    }
}

void check_angles(const AnsatzShape& shape, std::span<const double> angles) {
    shape.validate();
    if (angles.size() != shape.num_angles()) {
        throw DimensionError("ansatz expects " + std::to_string(shape.num_angles()) +
                             " angles, got " + std::to_string(angles.size()));
    }
}

void check_weights(const AnsatzShape& shape, std::span<const double> weights) {
    if (weights.size() != shape.dimension()) {
        throw DimensionError("weight vector has length " + std::to_string(weights.size()) +
                             ", expected " + std::to_string(shape.dimension()));
    }
}

std::vector<double> shift_rule_gradient(const AnsatzShape& shape, std::span<const double> angles,
                                        std::span<const double> weights) {
    constexpr double kShift = std::numbers::pi / 2.0;
    std::vector<double> shifted(angles.begin(), angles.end());
    std::vector<double> grad(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
        shifted[j] = angles[j] + kShift;
        const double plus = weighted_prob_sum(shape, shifted, weights);
        shifted[j] = angles[j] - kShift;
        const double minus = weighted_prob_sum(shape, shifted, weights);
        shifted[j] = angles[j];
        grad[j] = 0.5 * (plus - minus);
    }
    return grad;
}

std::vector<double> adjoint_gradient(const AnsatzShape& shape, std::span<const double> angles,
                                     std::span<const double> weights) {
    const int n = shape.qubits;
    StateVector psi = run_ansatz(shape, angles);
    StateVector lambda = psi;
    {
        auto amps = lambda.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] *= weights[i];
        }
    }

    std::vector<double> grad(angles.size());
    for (int block = shape.blocks - 1; block >= 0; --block) {
        apply_ring_inverse(psi);
        apply_ring_inverse(lambda);
        for (int q = n - 1; q >= 0; --q) {
            const std::size_t offset = 3 * (static_cast<std::size_t>(block) * n + q);
            const double theta = angles[offset];
            const double phi = angles[offset + 1];
            const double lam = angles[offset + 2];
            const Matrix2 u_dag = adjoint(u3_matrix(theta, phi, lam));
            apply_matrix(psi, q, u_dag);
            const auto derivs = u3_derivatives(theta, phi, lam);
            for (std::size_t j = 0; j < 3; ++j) {
                grad[offset + j] = 2.0 * sandwich(lambda, derivs[j], psi, q).real();
            }
            apply_matrix(lambda, q, u_dag);
        }
    }
    return grad;
}

} // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(num_qubits));
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t len = amplitudes.size();
    if (len < 2 || !std::has_single_bit(len)) {
        throw DimensionError("amplitude count " + std::to_string(len) +
                             " is not a power of two >= 2");
    }
    const int n = std::countr_zero(len);
    if (n > kMaxQubits) {
        throw ConfigError("too many qubits: " + std::to_string(n));
    }
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Complex& a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

void AnsatzShape::validate() const {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw ConfigError("ansatz qubit count must be in [1, 20], got " + std::to_string(qubits));
    }
    if (blocks < 1) {
        throw ConfigError("ansatz block count must be >= 1, got " + std::to_string(blocks));
    }
}

Matrix2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e_phi = std::polar(1.0, phi);
    const Complex e_lambda = std::polar(1.0, lambda);
    return {Complex{c, 0.0}, -e_lambda * s, e_phi * s, e_phi * e_lambda * c};
}

std::array<Matrix2, 3> u3_derivatives(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e_phi = std::polar(1.0, phi);
    const Complex e_lambda = std::polar(1.0, lambda);
    const Complex e_both = e_phi * e_lambda;
    const Complex i{0.0, 1.0};
    const Complex zero{0.0, 0.0};
    return {{
        {Complex{-0.5 * s, 0.0}, -0.5 * e_lambda * c, 0.5 * e_phi * c, -0.5 * e_both * s},
        {zero, zero, i * e_phi * s, i * e_both * c},
        {zero, -i * e_lambda * s, zero, i * e_both * c},
    }};
}

void apply_matrix(StateVector& state, int qubit, const Matrix2& m) {
    check_qubit(state, qubit);
    const std::size_t stride = bit_of(state.num_qubits(), qubit);
    auto amps = state.amplitudes();
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_u3(StateVector& state, int qubit, double theta, double phi, double lambda) {
    apply_matrix(state, qubit, u3_matrix(theta, phi, lambda));
}

void apply_cnot(StateVector& state, int control, int target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw InvalidGateError("CNOT control and target are both qubit " + std::to_string(control));
    }
    const std::size_t cbit = bit_of(state.num_qubits(), control);
    const std::size_t tbit = bit_of(state.num_qubits(), target);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

StateVector run_ansatz(const AnsatzShape& shape, std::span<const double> angles) {
    check_angles(shape, angles);
    StateVector state(shape.qubits);
    const int n = shape.qubits;
    for (int block = 0; block < shape.blocks; ++block) {
        for (int q = 0; q < n; ++q) {
            const std::size_t offset = 3 * (static_cast<std::size_t>(block) * n + q);
            apply_u3(state, q, angles[offset], angles[offset + 1], angles[offset + 2]);
        }
        apply_ring(state);
    }
    return state;
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> probs(state.size());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        probs[i] = std::norm(amps[i]);
    }
    return probs;
}

double weighted_prob_sum(const AnsatzShape& shape, std::span<const double> angles,
                         std::span<const double> weights) {
    check_angles(shape, angles);
    check_weights(shape, weights);
    const StateVector state = run_ansatz(shape, angles);
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += weights[i] * std::norm(amps[i]);
    }
    return acc;
}

std::vector<double> weighted_prob_gradient(const AnsatzShape& shape,
                                           std::span<const double> angles,
                                           std::span<const double> weights,
                                           GradientMethod method) {
    check_angles(shape, angles);
    check_weights(shape, weights);
    switch (method) {
    case GradientMethod::kParameterShift:
        return shift_rule_gradient(shape, angles, weights);
    case GradientMethod::kAdjoint:
        return adjoint_gradient(shape, angles, weights);
    }
    throw ConfigError("unknown gradient method");
}

} // namespace dqtrl
