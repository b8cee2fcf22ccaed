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
 * @file qsim.hpp
 * @brief Statevector simulation of the layered U3 + CNOT-ring ansatz.
 *
 * Qubit ordering: qubit 0 is the most significant bit of a basis index, so
 * for n qubits basis state |b_0 b_1 ... b_{n-1}> has index
 * sum_q b_q * 2^(n-1-q). The mapping model reads bit-strings in the same
 * order.
 *
 * Angle layout of the ansatz: block-major, then qubit, then (theta, phi,
 * lambda). Angle j of qubit q in block b sits at index 3 * (b * n + q) + j.
 */

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dqtrl {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    /// Wraps raw amplitudes; length must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }

    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;

  private:
    StateVector(int num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Shape of the L-block ansatz on n qubits.
struct AnsatzShape {
    int qubits = 1;
    int blocks = 1;

    std::size_t num_angles() const {
        return 3 * static_cast<std::size_t>(qubits) * static_cast<std::size_t>(blocks);
    }
    std::size_t dimension() const { return std::size_t{1} << qubits; }

    /// Throws ConfigError unless 1 <= qubits <= 20 and blocks >= 1.
    void validate() const;
};

enum class GradientMethod {
    kParameterShift,
    kAdjoint,
};

Matrix2 u3_matrix(double theta, double phi, double lambda);

/// Derivatives of the U3 matrix with respect to (theta, phi, lambda).
std::array<Matrix2, 3> u3_derivatives(double theta, double phi, double lambda);

/// Applies an arbitrary 2x2 matrix to `qubit`. Norm is preserved only for unitaries.
void apply_matrix(StateVector& state, int qubit, const Matrix2& m);

void apply_u3(StateVector& state, int qubit, double theta, double phi, double lambda);

/// Throws InvalidGateError when control == target, IndexError when out of range.
void apply_cnot(StateVector& state, int control, int target);

/// Runs the ansatz from |0...0>. Each block is one U3 per qubit followed by
/// CNOT(q, (q+1) mod n) for q = 0..n-1 (no entangler when n == 1).
StateVector run_ansatz(const AnsatzShape& shape, std::span<const double> angles);

std::vector<double> probabilities(const StateVector& state);

/**
 * Gradient of f(angles) = sum_i weights[i] * p_i(angles).
 *
 * kParameterShift evaluates every angle at +-pi/2 (2m ansatz runs). U3 equals
 * RZ(phi) RY(theta) RZ(lambda) up to a global phase, so each angle drives a
 * single Pauli rotation and the two-term shift is exact.
 *
 * kAdjoint does one forward and one reverse sweep over the circuit and
 * agrees with the shift rule to rounding error.
 */
std::vector<double> weighted_prob_gradient(const AnsatzShape& shape,
                                           std::span<const double> angles,
                                           std::span<const double> weights,
                                           GradientMethod method = GradientMethod::kParameterShift);

/// f(angles) = sum_i weights[i] * p_i(angles).
double weighted_prob_sum(const AnsatzShape& shape, std::span<const double> angles,
                         std::span<const double> weights);

} // namespace dqtrl
