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

#include "dqtrl/qt_gen.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <string>

#include "dqtrl/errors.hpp"
#include "dqtrl/rng.hpp"

namespace dqtrl {

int ceil_log2(std::size_t k) {
    if (k <= 1) {
        return 0;
    }
    return static_cast<int>(std::bit_width(k - 1));
}

QtShape QtShape::for_generated(std::size_t k, int blocks) {
    QtShape shape{std::max(1, ceil_log2(k)), blocks, k};
    shape.validate();
    return shape;
}

void QtShape::validate() const {
    ansatz().validate();
    if (generated < 1) {
        throw ConfigError("generated parameter count must be >= 1");
    }
    const int expected = std::max(1, ceil_log2(generated));
    if (qubits != expected) {
        throw ConfigError("k = " + std::to_string(generated) + " requires " +
                          std::to_string(expected) + " qubits, shape has " +
                          std::to_string(qubits));
    }
}

GlobalModel::GlobalModel(QtShape shape, std::vector<double> params)
    : shape_(shape), params_(std::move(params)) {
    shape_.validate();
    if (params_.size() != shape_.num_trainable()) {
        throw DimensionError("model expects " + std::to_string(shape_.num_trainable()) +
                             " trainable parameters, got " + std::to_string(params_.size()));
    }
}

GlobalModel GlobalModel::initialize(const QtShape& shape, std::uint64_t seed) {
    shape.validate();
    Rng rng(splitmix64(seed));
    std::vector<double> params;
    params.reserve(shape.num_trainable());
    for (std::size_t i = 0; i < shape.num_angles(); ++i) {
        params.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    const auto beta = init_mapping_params(shape.mapping(), rng);
    params.insert(params.end(), beta.begin(), beta.end());
    return GlobalModel(shape, std::move(params));
}

namespace {

void check_params(const QtShape& shape, std::span<const double> params) {
    shape.validate();
    if (params.size() != shape.num_trainable()) {
        throw DimensionError("expected " + std::to_string(shape.num_trainable()) +
                             " trainable parameters, got " + std::to_string(params.size()));
    }
}

} // namespace

std::vector<double> generate_theta(const QtShape& shape, std::span<const double> params) {
    check_params(shape, params);
    const auto phi = params.first(shape.num_angles());
    const auto beta = params.subspan(shape.num_angles());
    const auto probs = probabilities(run_ansatz(shape.ansatz(), phi));
    return map_all(shape.mapping(), beta, probs, shape.generated);
}

std::vector<double> pullback_gradient(const QtShape& shape, std::span<const double> params,
                                      std::span<const double> grad_theta,
                                      GradientMethod method) {
    check_params(shape, params);
    if (grad_theta.size() != shape.generated) {
        throw DimensionError("policy gradient has length " + std::to_string(grad_theta.size()) +
                             ", expected " + std::to_string(shape.generated));
    }
    const std::size_t m = shape.num_angles();
    const auto phi = params.first(m);
    const auto beta = params.subspan(m);
    const MappingShape mapping = shape.mapping();
    const AnsatzShape ansatz = shape.ansatz();

    const auto probs = probabilities(run_ansatz(ansatz, phi));
    const double scale = mapping.prob_scale();

    std::vector<double> grad(shape.num_trainable(), 0.0);
    std::span<double> grad_beta = std::span(grad).subspan(m);
    std::vector<double> prob_weights(ansatz.dimension(), 0.0);
    std::vector<double> bits(shape.qubits);
    bool any_prob_path = false;
    for (std::size_t i = 0; i < shape.generated; ++i) {
        encode_bits(shape.qubits, i, bits);
        prob_weights[i] = map_backward_accumulate(mapping, beta, bits, scale * probs[i],
                                                  grad_theta[i], grad_beta);
        any_prob_path = any_prob_path || prob_weights[i] != 0.0;
    }
    if (any_prob_path) {
        const auto grad_phi = weighted_prob_gradient(ansatz, phi, prob_weights, method);
        std::copy(grad_phi.begin(), grad_phi.end(), grad.begin());
    }
    return grad;
}

} // namespace dqtrl
