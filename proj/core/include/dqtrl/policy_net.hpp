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
 * @file policy_net.hpp
 * @brief Two-layer softmax policy pi_theta(a | s) with exact score gradients.
 *
 * Flat layout of theta: W1 (hidden x inputs, row-major), b1 (hidden),
 * W2 (actions x hidden, row-major), b2 (actions).
 */

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dqtrl/rng.hpp"

namespace dqtrl {

enum class Activation {
    kTanh,
    kRelu,
};

std::string to_string(Activation activation);
Activation parse_activation(const std::string& name);

struct PolicyTopology {
    std::size_t inputs = 147;
    std::size_t hidden = 6;
    std::size_t actions = 3;
    Activation activation = Activation::kTanh;

    /// 147 -> 6 -> 3, the network generated by the quantum-train model (k = 909).
    static PolicyTopology generated_default() { return {147, 6, 3, Activation::kTanh}; }
    /// 147 -> 32 -> 3, the directly trained classical baseline (4835 parameters).
    static PolicyTopology classical_baseline() { return {147, 32, 3, Activation::kTanh}; }

    std::size_t num_params() const {
        return hidden * inputs + hidden + actions * hidden + actions;
    }

    bool operator==(const PolicyTopology&) const = default;
};

/// Owning, unpacked copy of theta.
struct PolicyLayers {
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;

    bool operator==(const PolicyLayers&) const = default;
};

PolicyLayers unpack(const PolicyTopology& topology, std::span<const double> theta);
std::vector<double> pack(const PolicyTopology& topology, const PolicyLayers& layers);

struct ActionDistribution {
    std::vector<double> probs;
};

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) per layer.
std::vector<double> init_policy_params(const PolicyTopology& topology, Rng& rng);

ActionDistribution forward(const PolicyTopology& topology, std::span<const double> theta,
                           std::span<const double> obs);

/// Inverse-CDF categorical sample from a single uniform draw.
int sample_action(const ActionDistribution& dist, Rng& rng);

std::vector<double> logpi_grad(const PolicyTopology& topology, std::span<const double> theta,
                               std::span<const double> obs, int action);

/// out += scale * grad log pi(action | obs).
void accumulate_logpi_grad(const PolicyTopology& topology, std::span<const double> theta,
                           std::span<const double> obs, int action, double scale,
                           std::span<double> out);

} // namespace dqtrl
