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

#include "dqtrl/mapper.hpp"

#include <array>
#include <cmath>
#include <string>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

constexpr std::size_t H = MappingShape::kHidden;

// Offsets of each block inside the flat parameter vector.
struct Layout {
    std::size_t w1, b1, w2, b2, w3, b3;

    explicit Layout(const MappingShape& shape) {
        w1 = 0;
        b1 = w1 + H * shape.input_width();
        w2 = b1 + H;
        b2 = w2 + H * H;
        w3 = b2 + H;
        b3 = w3 + H;
    }
};

struct Activations {
    std::array<double, H> h1{};
    std::array<double, H> h2{};
    double out = 0.0;
};

void check_beta(const MappingShape& shape, std::span<const double> beta) {
    if (beta.size() != shape.num_params()) {
        throw DimensionError("mapping params have length " + std::to_string(beta.size()) +
                             ", expected " + std::to_string(shape.num_params()));
    }
}

void check_bits(const MappingShape& shape, std::span<const double> bits) {
    if (bits.size() != static_cast<std::size_t>(shape.qubits)) {
        throw DimensionError("mapping input has " + std::to_string(bits.size()) +
                             " bits, expected " + std::to_string(shape.qubits));
    }
}

Activations forward_pass(const MappingShape& shape, std::span<const double> beta,
                         std::span<const double> bits, double scaled_prob) {
    const Layout at(shape);
    const std::size_t in = shape.input_width();
    const std::size_t nbits = bits.size();
    Activations act;
    for (std::size_t j = 0; j < H; ++j) {
        const double* row = beta.data() + at.w1 + j * in;
        double z = beta[at.b1 + j];
        for (std::size_t i = 0; i < nbits; ++i) {
            z += row[i] * bits[i];
        }
        z += row[nbits] * scaled_prob;
        act.h1[j] = std::tanh(z);
    }
    for (std::size_t j = 0; j < H; ++j) {
        const double* row = beta.data() + at.w2 + j * H;
        double z = beta[at.b2 + j];
        for (std::size_t i = 0; i < H; ++i) {
            z += row[i] * act.h1[i];
        }
        act.h2[j] = std::tanh(z);
    }
    double out = beta[at.b3];
    for (std::size_t i = 0; i < H; ++i) {
        out += beta[at.w3 + i] * act.h2[i];
    }
    act.out = out;
    return act;
}

} // namespace

void encode_bits(int qubits, std::size_t index, std::span<double> out) {
    for (int q = 0; q < qubits; ++q) {
        const bool set = ((index >> (qubits - 1 - q)) & 1U) != 0;
        out[q] = set ? 1.0 : -1.0;
    }
}

MapInput MapInput::for_basis_state(int qubits, std::size_t index, double prob) {
    MapInput input;
    input.bits.resize(qubits);
    encode_bits(qubits, index, input.bits);
    input.scaled_prob = MappingShape{qubits}.prob_scale() * prob;
    return input;
}

std::vector<double> init_mapping_params(const MappingShape& shape, Rng& rng) {
    const Layout at(shape);
    std::vector<double> beta(shape.num_params());
    auto fill = [&](std::size_t from, std::size_t to, std::size_t fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (std::size_t i = from; i < to; ++i) {
            beta[i] = rng.uniform(-bound, bound);
        }
    };
    fill(at.w1, at.w2, shape.input_width());
    fill(at.w2, at.w3, H);
    fill(at.w3, beta.size(), H);
    return beta;
}

double map_forward(const MappingShape& shape, std::span<const double> beta, const MapInput& input) {
    check_beta(shape, beta);
    check_bits(shape, input.bits);
    return forward_pass(shape, beta, input.bits, input.scaled_prob).out;
}

std::vector<double> map_all(const MappingShape& shape, std::span<const double> beta,
                            std::span<const double> probs, std::size_t k) {
    check_beta(shape, beta);
    const std::size_t dim = std::size_t{1} << shape.qubits;
    if (probs.size() != dim) {
        throw DimensionError("probability vector has length " + std::to_string(probs.size()) +
                             ", expected " + std::to_string(dim));
    }
    if (k > dim) {
        throw CapacityError("cannot generate " + std::to_string(k) + " parameters from " +
                            std::to_string(dim) + " basis states");
    }
    const double scale = shape.prob_scale();
    std::vector<double> bits(shape.qubits);
    std::vector<double> theta(k);
    for (std::size_t i = 0; i < k; ++i) {
        encode_bits(shape.qubits, i, bits);
        theta[i] = forward_pass(shape, beta, bits, scale * probs[i]).out;
    }
    return theta;
}

double map_backward_accumulate(const MappingShape& shape, std::span<const double> beta,
                               std::span<const double> bits, double scaled_prob,
                               double upstream, std::span<double> grad_beta) {
    check_beta(shape, beta);
    check_bits(shape, bits);
    if (grad_beta.size() != shape.num_params()) {
        throw DimensionError("mapping gradient buffer has wrong length");
    }
    if (upstream == 0.0) {
        return 0.0;
    }
    const Layout at(shape);
    const std::size_t in = shape.input_width();
    const std::size_t nbits = bits.size();
    const Activations act = forward_pass(shape, beta, bits, scaled_prob);

    // Output layer.
    grad_beta[at.b3] += upstream;
    std::array<double, H> d2{};
    for (std::size_t i = 0; i < H; ++i) {
        grad_beta[at.w3 + i] += upstream * act.h2[i];
        d2[i] = upstream * beta[at.w3 + i] * (1.0 - act.h2[i] * act.h2[i]);
    }

    // Second hidden layer.
    std::array<double, H> d1{};
    for (std::size_t j = 0; j < H; ++j) {
        grad_beta[at.b2 + j] += d2[j];
        const std::size_t row = at.w2 + j * H;
        for (std::size_t i = 0; i < H; ++i) {
            grad_beta[row + i] += d2[j] * act.h1[i];
            d1[i] += d2[j] * beta[row + i];
        }
    }

    // First hidden layer; the last input column is the scaled probability.
    double d_scaled = 0.0;
    for (std::size_t j = 0; j < H; ++j) {
        const double dz = d1[j] * (1.0 - act.h1[j] * act.h1[j]);
        grad_beta[at.b1 + j] += dz;
        const std::size_t row = at.w1 + j * in;
        for (std::size_t i = 0; i < nbits; ++i) {
            grad_beta[row + i] += dz * bits[i];
        }
        grad_beta[row + nbits] += dz * scaled_prob;
        d_scaled += dz * beta[row + nbits];
    }
    return d_scaled * shape.prob_scale();
}

MapGradient map_backward(const MappingShape& shape, std::span<const double> beta,
                         const MapInput& input, double upstream) {
    MapGradient grad;
    grad.beta.assign(shape.num_params(), 0.0);
    grad.prob = map_backward_accumulate(shape, beta, input.bits, input.scaled_prob, upstream,
                                        grad.beta);
    return grad;
}

} // namespace dqtrl
