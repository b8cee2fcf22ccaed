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
 * @file checkpoint.hpp
 * @brief model.ckpt: one text header line followed by little-endian IEEE-754
 * doubles.
 *
 * Header (space separated key=value pairs after the magic and version):
 *
 *   dqtrl-checkpoint 1 mode=<mode> n=<qubits> L=<blocks> k=<generated>
 *     inputs=<i> hidden=<h> actions=<a> activation=<tanh|relu> seed=<s>
 *     count=<trainable>\n
 *
 * QTRL checkpoints store [phi..., beta...] with phi reduced to [0, 2pi);
 * classical checkpoints store theta directly with n = L = 0.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dqtrl/config.hpp"
#include "dqtrl/policy_net.hpp"
#include "dqtrl/qt_gen.hpp"

namespace dqtrl {

struct Checkpoint {
    static constexpr int kVersion = 1;

    Mode mode = Mode::kQtrlDistributed;
    int qubits = 0;
    int blocks = 0;
    std::size_t generated = 0;
    PolicyTopology topology;
    std::uint64_t seed = 0;
    std::vector<double> params;

    bool is_quantum() const { return mode != Mode::kClassicalBaseline; }
    QtShape qt_shape() const { return {qubits, blocks, generated}; }

    /// Trainable count implied by the header fields. Throws LoadError for
    /// inconsistent shapes.
    std::size_t expected_count() const;

    /// Throws LoadError when header dimensions and payload disagree.
    void validate() const;

    bool operator==(const Checkpoint&) const = default;
};

/// x mod 2pi in [0, 2pi).
double wrap_angle(double x);

std::string header_line(const Checkpoint& ckpt);

/// Writes the checkpoint, reducing the quantum angles to [0, 2pi).
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint deserialize_checkpoint(const std::string& bytes);

} // namespace dqtrl
