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
 * @file oracles.hpp
 * @brief Slow reference implementations that share no arithmetic with the
 * production kernels. Used by `verify` and the test suites.
 */

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dqtrl/policy_net.hpp"
#include "dqtrl/qsim.hpp"

namespace dqtrl::oracle {

/// Dense row-major square complex matrix.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> data;

    std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    std::complex<double> at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

DenseMatrix identity(std::size_t dim);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// U3 built as e^{i(phi+lambda)/2} RZ(phi) RY(theta) RZ(lambda).
DenseMatrix u3_by_rotations(double theta, double phi, double lambda);

/// Full 2^n x 2^n matrix of a single-qubit gate (qubit 0 = most significant).
DenseMatrix embed_single(const DenseMatrix& gate, int qubit, int num_qubits);

/// Full 2^n x 2^n CNOT as a permutation matrix.
DenseMatrix cnot_matrix(int control, int target, int num_qubits);

/// Product of every gate of the ansatz. Practical for n <= 6.
DenseMatrix ansatz_unitary(const AnsatzShape& shape, std::span<const double> angles);

/// First column of ansatz_unitary, i.e. U |0...0>.
std::vector<std::complex<double>> ansatz_state(const AnsatzShape& shape,
                                               std::span<const double> angles);

/// Mapping model evaluated with an explicit input vector and generic dense layers.
double map_forward(int qubits, std::span<const double> beta, std::size_t basis_index,
                   double raw_prob);

/// Policy probabilities via log-sum-exp on naively computed logits.
std::vector<double> policy_forward(const PolicyTopology& topology, std::span<const double> theta,
                                   std::span<const double> obs);

/// Central differences (f(x + eps e_i) - f(x - eps e_i)) / 2 eps for every i.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double eps);

} // namespace dqtrl::oracle
