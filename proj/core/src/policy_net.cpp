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

#include "dqtrl/policy_net.hpp"

#include <algorithm>
#include <cmath>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

struct Offsets {
    std::size_t w1, b1, w2, b2;

    explicit Offsets(const PolicyTopology& t) {
        w1 = 0;
        b1 = t.hidden * t.inputs;
        w2 = b1 + t.hidden;
        b2 = w2 + t.actions * t.hidden;
    }
};

void check_theta(const PolicyTopology& t, std::span<const double> theta) {
    if (theta.size() != t.num_params()) {
        throw DimensionError("policy expects " + std::to_string(t.num_params()) +
                             " parameters, got " + std::to_string(theta.size()));
    }
}

void check_obs(const PolicyTopology& t, std::span<const double> obs) {
    if (obs.size() != t.inputs) {
        throw DimensionError("observation has length " + std::to_string(obs.size()) +
                             ", expected " + std::to_string(t.inputs));
    }
}

double activate(Activation a, double z) {
    return a == Activation::kTanh ? std::tanh(z) : std::max(0.0, z);
}

// d activation / dz expressed through the activation value.
double activate_grad(Activation a, double h) {
    return a == Activation::kTanh ? 1.0 - h * h : (h > 0.0 ? 1.0 : 0.0);
}

struct Pass {
    std::vector<double> hidden;
    std::vector<double> probs;
};

Pass run(const PolicyTopology& t, std::span<const double> theta, std::span<const double> obs) {
    const Offsets at(t);
    Pass pass;
    pass.hidden.resize(t.hidden);
    for (std::size_t j = 0; j < t.hidden; ++j) {
        const double* row = theta.data() + at.w1 + j * t.inputs;
        double z = theta[at.b1 + j];
        for (std::size_t i = 0; i < t.inputs; ++i) {
            z += row[i] * obs[i];
        }
        pass.hidden[j] = activate(t.activation, z);
    }
    pass.probs.resize(t.actions);
    for (std::size_t a = 0; a < t.actions; ++a) {
        const double* row = theta.data() + at.w2 + a * t.hidden;
        double z = theta[at.b2 + a];
        for (std::size_t j = 0; j < t.hidden; ++j) {
            z += row[j] * pass.hidden[j];
        }
        pass.probs[a] = z;
    }
    const double max_logit = *std::max_element(pass.probs.begin(), pass.probs.end());
    double total = 0.0;
    for (double& p : pass.probs) {
        p = std::exp(p - max_logit);
        total += p;
    }
    for (double& p : pass.probs) {
        p /= total;
    }
    return pass;
}

} // namespace

std::string to_string(Activation activation) {
    return activation == Activation::kTanh ? "tanh" : "relu";
}

Activation parse_activation(const std::string& name) {
    if (name == "tanh") {
        return Activation::kTanh;
    }
    if (name == "relu") {
        return Activation::kRelu;
    }
    throw ConfigError("unknown activation '" + name + "' (expected tanh or relu)");
}

PolicyLayers unpack(const PolicyTopology& topology, std::span<const double> theta) {
    check_theta(topology, theta);
    const Offsets at(topology);
    auto slice = [&](std::size_t from, std::size_t to) {
        return std::vector<double>(theta.begin() + from, theta.begin() + to);
    };
    return {slice(at.w1, at.b1), slice(at.b1, at.w2), slice(at.w2, at.b2),
            slice(at.b2, theta.size())};
}

std::vector<double> pack(const PolicyTopology& topology, const PolicyLayers& layers) {
    if (layers.w1.size() != topology.hidden * topology.inputs ||
        layers.b1.size() != topology.hidden ||
        layers.w2.size() != topology.actions * topology.hidden ||
        layers.b2.size() != topology.actions) {
        throw DimensionError("policy layers do not match topology");
    }
    std::vector<double> theta;
    theta.reserve(topology.num_params());
    for (const auto* part : {&layers.w1, &layers.b1, &layers.w2, &layers.b2}) {
        theta.insert(theta.end(), part->begin(), part->end());
    }
    return theta;
}

std::vector<double> init_policy_params(const PolicyTopology& topology, Rng& rng) {
    const Offsets at(topology);
    std::vector<double> theta(topology.num_params());
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(topology.inputs));
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(topology.hidden));
    for (std::size_t i = 0; i < at.w2; ++i) {
        theta[i] = rng.uniform(-bound1, bound1);
    }
    for (std::size_t i = at.w2; i < theta.size(); ++i) {
        theta[i] = rng.uniform(-bound2, bound2);
    }
    return theta;
}

ActionDistribution forward(const PolicyTopology& topology, std::span<const double> theta,
                           std::span<const double> obs) {
    check_theta(topology, theta);
    check_obs(topology, obs);
    return {run(topology, theta, obs).probs};
}

int sample_action(const ActionDistribution& dist, Rng& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    int last_nonzero = 0;
    for (std::size_t a = 0; a < dist.probs.size(); ++a) {
        if (dist.probs[a] > 0.0) {
            last_nonzero = static_cast<int>(a);
        }
        cumulative += dist.probs[a];
        if (u < cumulative) {
            return static_cast<int>(a);
        }
    }
    // Rounding left the cumulative sum just below u.
    return last_nonzero;
}

void accumulate_logpi_grad(const PolicyTopology& topology, std::span<const double> theta,
                           std::span<const double> obs, int action, double scale,
                           std::span<double> out) {
    check_theta(topology, theta);
    check_obs(topology, obs);
    if (action < 0 || static_cast<std::size_t>(action) >= topology.actions) {
        throw IndexError("action " + std::to_string(action) + " out of range");
    }
    if (out.size() != topology.num_params()) {
        throw DimensionError("gradient buffer does not match policy topology");
    }
    if (scale == 0.0) {
        return;
    }
    const Offsets at(topology);
    const Pass pass = run(topology, theta, obs);

    // d log softmax_a / d logit_b = [a == b] - p_b
    std::vector<double> d_hidden(topology.hidden, 0.0);
    for (std::size_t b = 0; b < topology.actions; ++b) {
        const double d_logit =
            scale * ((static_cast<std::size_t>(action) == b ? 1.0 : 0.0) - pass.probs[b]);
        out[at.b2 + b] += d_logit;
        const std::size_t row = at.w2 + b * topology.hidden;
        for (std::size_t j = 0; j < topology.hidden; ++j) {
            out[row + j] += d_logit * pass.hidden[j];
            d_hidden[j] += d_logit * theta[row + j];
        }
    }
    for (std::size_t j = 0; j < topology.hidden; ++j) {
        const double dz = d_hidden[j] * activate_grad(topology.activation, pass.hidden[j]);
        if (dz == 0.0) {
            continue;
        }
        out[at.b1 + j] += dz;
        const std::size_t row = at.w1 + j * topology.inputs;
        for (std::size_t i = 0; i < topology.inputs; ++i) {
            out[row + i] += dz * obs[i];
        }
    }
}

std::vector<double> logpi_grad(const PolicyTopology& topology, std::span<const double> theta,
                               std::span<const double> obs, int action) {
    std::vector<double> grad(topology.num_params(), 0.0);
    accumulate_logpi_grad(topology, theta, obs, action, 1.0, grad);
    return grad;
}

} // namespace dqtrl
