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
 * @file dist_sync.hpp
 * @brief Synchronous N-agent training with gradient averaging.
 *
 * Each round the coordinator publishes an immutable snapshot of the
 * trainable vector, every agent runs its episodes against that snapshot
 * and returns one packet, and the coordinator averages the packets in
 * agent-index order before taking one optimizer step. Agents never see a
 * partially updated model.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dqtrl/history.hpp"
#include "dqtrl/optimizer.hpp"
#include "dqtrl/trainer.hpp"

namespace dqtrl {

struct SyncConfig {
    std::size_t num_agents = 1;
    TrainerSettings trainer;
    /// Run agents one after another on the calling thread.
    bool sequential = false;
    /// Optional order in which agents are executed and their packets
    /// collected (a permutation of 0..N-1). Only honoured in sequential mode;
    /// results must not depend on it.
    std::vector<std::size_t> collection_order;

    void validate() const;
};

/// (1/N) sum_i packet_i.grad, summed in ascending agent index.
/// Throws ProtocolError for an empty list, duplicate agents or mismatched
/// lengths, and PoisonedPacketError for non-finite entries.
std::vector<double> average_gradients(std::span<const GradientPacket> packets);

/// Averages `packets` and applies one optimizer step to `params`.
/// Returns the averaged gradient.
std::vector<double> sync_round(std::span<double> params, std::span<const GradientPacket> packets,
                               Optimizer& optimizer);

/// Agent i draws its actions from Rng(base_seed + i).
TrainingHistory train_distributed(const SyncConfig& config, const PolicyGenerator& generator,
                                  std::vector<double>& params,
                                  const RoundObserver& observer = {});

} // namespace dqtrl
