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
 * @file mapper.hpp
 * @brief Classical mapping model turning (bit-string, probability) into one
 * policy weight.
 *
 * Topology (n+1) -> 10 -> 10 -> 1 with tanh hidden layers and a linear
 * output. Parameters are flattened layer by layer, weights (row-major,
 * [out][in]) before biases:
 *
 *   W1 (10 x (n+1)), b1 (10), W2 (10 x 10), b2 (10), W3 (1 x 10), b3 (1)
 *
 * Inputs: the n bits of basis index i (qubit 0 first, i.e. MSB first),
 * mapped {0,1} -> {-1,+1}, followed by 2^n * p_i.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "dqtrl/rng.hpp"

namespace dqtrl {

struct MappingShape {
    static constexpr std::size_t kHidden = 10;

    int qubits = 1;

    std::size_t input_width() const { return static_cast<std::size_t>(qubits) + 1; }
    std::size_t num_params() const {
        return input_width() * kHidden + kHidden + kHidden * kHidden + kHidden + kHidden + 1;
    }
    /// 2^n, the factor applied to raw probabilities.
    double prob_scale() const { return static_cast<double>(std::size_t{1} << qubits); }
};

struct MapInput {
    std::vector<double> bits;
    double scaled_prob = 0.0;

    /// Encodes basis index `index` of an n-qubit register with raw probability `prob`.
    static MapInput for_basis_state(int qubits, std::size_t index, double prob);
};

struct MapGradient {
    std::vector<double> beta;
    /// Derivative with respect to the raw probability p_i (2^n scale included).
    double prob = 0.0;
};

/// {-1,+1} encoding of basis index `index`, MSB (qubit 0) first.
void encode_bits(int qubits, std::size_t index, std::span<double> out);

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) per layer, biases included.
std::vector<double> init_mapping_params(const MappingShape& shape, Rng& rng);

double map_forward(const MappingShape& shape, std::span<const double> beta, const MapInput& input);

/// theta[i] = map_forward(beta, bits(i), 2^n * probs[i]) for i < k.
/// Throws CapacityError when k > 2^n.
std::vector<double> map_all(const MappingShape& shape, std::span<const double> beta,
                            std::span<const double> probs, std::size_t k);

MapGradient map_backward(const MappingShape& shape, std::span<const double> beta,
                         const MapInput& input, double upstream);

/// Adds upstream * d(theta)/d(beta) into `grad_beta`; returns upstream * d(theta)/d(p).
double map_backward_accumulate(const MappingShape& shape, std::span<const double> beta,
                               std::span<const double> bits, double scaled_prob,
                               double upstream, std::span<double> grad_beta);

} // namespace dqtrl
