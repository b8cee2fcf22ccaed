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
 * @file qt_gen.hpp
 * @brief Quantum-Train weight generation: theta = M_beta(probabilities(phi)).
 *
 * The trainable state is one flat vector: the 3nL ansatz angles followed by
 * the mapping-model parameters.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dqtrl/mapper.hpp"
#include "dqtrl/qsim.hpp"

namespace dqtrl {

/// ceil(log2(k)) for k >= 1, with ceil_log2(1) == 0.
int ceil_log2(std::size_t k);

struct QtShape {
    int qubits = 1;
    int blocks = 1;
    /// Number of generated policy parameters k.
    std::size_t generated = 1;

    /// Shape for k generated parameters on ceil(log2 k) qubits (at least one).
    static QtShape for_generated(std::size_t k, int blocks);

    AnsatzShape ansatz() const { return {qubits, blocks}; }
    MappingShape mapping() const { return {qubits}; }

    std::size_t num_angles() const { return ansatz().num_angles(); }
    std::size_t num_mapping_params() const { return mapping().num_params(); }
    std::size_t num_trainable() const { return num_angles() + num_mapping_params(); }

    /// m + l < k.
    bool compresses() const { return num_trainable() < generated; }

    /// Checks 1 <= k <= 2^n, n = max(1, ceil(log2 k)) and blocks >= 1.
    void validate() const;

    bool operator==(const QtShape&) const = default;
};

/// Theta = {phi, beta} packed as [phi..., beta...].
class GlobalModel {
  public:
    GlobalModel(QtShape shape, std::vector<double> params);

    /// phi ~ U[0, 2pi), beta per init_mapping_params, both from `seed`.
    static GlobalModel initialize(const QtShape& shape, std::uint64_t seed);

    const QtShape& shape() const { return shape_; }

    std::span<const double> params() const { return params_; }
    std::span<double> params() { return params_; }

    std::span<const double> phi() const { return params().first(shape_.num_angles()); }
    std::span<const double> beta() const { return params().subspan(shape_.num_angles()); }

  private:
    QtShape shape_;
    std::vector<double> params_;
};

std::vector<double> generate_theta(const QtShape& shape, std::span<const double> params);

inline std::vector<double> generate_theta(const GlobalModel& model) {
    return generate_theta(model.shape(), model.params());
}

/**
 * Pulls d J / d theta back to d J / d (phi, beta).
 *
 * The mapping gradients sum directly into the beta block. The phi block is
 * one weighted_prob_gradient call on sum_i w_i p_i, where w_i is dJ/dp_i
 * for i < k and 0 for the unused basis states.
 */
std::vector<double> pullback_gradient(const QtShape& shape, std::span<const double> params,
                                      std::span<const double> grad_theta,
                                      GradientMethod method = GradientMethod::kParameterShift);

inline std::vector<double> pullback_gradient(const GlobalModel& model,
                                             std::span<const double> grad_theta,
                                             GradientMethod method = GradientMethod::kParameterShift) {
    return pullback_gradient(model.shape(), model.params(), grad_theta, method);
}

} // namespace dqtrl
