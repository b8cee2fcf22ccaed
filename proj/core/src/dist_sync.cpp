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

#include "dqtrl/dist_sync.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

using AgentTask = std::function<GradientPacket(std::size_t agent)>;

// One persistent thread per agent; two barrier phases per round.
class AgentPool {
  public:
    AgentPool(std::size_t num_agents, AgentTask task)
        : task_(std::move(task)), start_(static_cast<std::ptrdiff_t>(num_agents + 1)),
          finish_(static_cast<std::ptrdiff_t>(num_agents + 1)), results_(num_agents),
          errors_(num_agents) {
        threads_.reserve(num_agents);
        for (std::size_t i = 0; i < num_agents; ++i) {
            threads_.emplace_back([this, i] { worker(i); });
        }
    }

    AgentPool(const AgentPool&) = delete;
    AgentPool& operator=(const AgentPool&) = delete;

    ~AgentPool() {
        stop_.store(true);
        start_.arrive_and_wait();
        threads_.clear();
    }

    /// Packets in agent order, or the failures of this round.
    std::vector<GradientPacket> run_round(std::vector<std::exception_ptr>& failures) {
        start_.arrive_and_wait();
        finish_.arrive_and_wait();
        failures = errors_;
        std::vector<GradientPacket> packets = std::move(results_);
        results_.assign(packets.size(), {});
        std::fill(errors_.begin(), errors_.end(), nullptr);
        return packets;
    }

  private:
    void worker(std::size_t agent) {
        for (;;) {
            start_.arrive_and_wait();
            if (stop_.load()) {
                return;
            }
            try {
                results_[agent] = task_(agent);
            } catch (...) {
                errors_[agent] = std::current_exception();
            }
            finish_.arrive_and_wait();
        }
    }

    AgentTask task_;
    std::barrier<> start_;
    std::barrier<> finish_;
    std::atomic<bool> stop_{false};
    std::vector<GradientPacket> results_;
    std::vector<std::exception_ptr> errors_;
    std::vector<std::jthread> threads_;
};

std::string describe(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown error";
    }
}

[[noreturn]] void abort_round(std::size_t round, const std::vector<std::exception_ptr>& failures) {
    std::string message = "round " + std::to_string(round) + " aborted:";
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (failures[i]) {
            message += " [agent " + std::to_string(i) + ": " + describe(failures[i]) + "]";
        }
    }
    throw RoundAborted(message);
}

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

} // namespace

void SyncConfig::validate() const {
    trainer.validate();
    if (num_agents < 1) {
        throw ConfigError("at least one agent is required");
    }
    if (!collection_order.empty()) {
        std::vector<std::size_t> sorted = collection_order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> expected(num_agents);
        std::iota(expected.begin(), expected.end(), std::size_t{0});
        if (sorted != expected) {
            throw ConfigError("collection order must be a permutation of the agent indices");
        }
    }
}

std::vector<double> average_gradients(std::span<const GradientPacket> packets) {
    if (packets.empty()) {
        throw ProtocolError("cannot synchronize an empty set of packets");
    }
    std::vector<const GradientPacket*> ordered;
    ordered.reserve(packets.size());
    for (const auto& p : packets) {
        ordered.push_back(&p);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const GradientPacket* a, const GradientPacket* b) { return a->agent < b->agent; });
    const std::size_t len = ordered.front()->grad.size();
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const GradientPacket& p = *ordered[i];
        if (i > 0 && ordered[i - 1]->agent == p.agent) {
            throw ProtocolError("duplicate packet from agent " + std::to_string(p.agent));
        }
        if (p.grad.size() != len) {
            throw ProtocolError("packet from agent " + std::to_string(p.agent) +
                                " has mismatched length");
        }
        if (!p.finite()) {
            throw PoisonedPacketError("packet from agent " + std::to_string(p.agent) +
                                      " contains non-finite values");
        }
    }
    std::vector<double> avg(len, 0.0);
    for (const GradientPacket* p : ordered) {
        for (std::size_t j = 0; j < len; ++j) {
            avg[j] += p->grad[j];
        }
    }
    const double n = static_cast<double>(ordered.size());
    for (double& g : avg) {
        g /= n;
    }
    return avg;
}

std::vector<double> sync_round(std::span<double> params, std::span<const GradientPacket> packets,
                               Optimizer& optimizer) {
    std::vector<double> avg = average_gradients(packets);
    if (avg.size() != params.size()) {
        throw ProtocolError("packet length does not match the model");
    }
    optimizer.ascend(params, avg);
    return avg;
}

TrainingHistory train_distributed(const SyncConfig& config, const PolicyGenerator& generator,
                                  std::vector<double>& params, const RoundObserver& observer) {
    config.validate();
    if (params.size() != generator.num_trainable()) {
        throw DimensionError("parameter vector does not match the generator");
    }
    const TrainerSettings& s = config.trainer;
    const std::size_t n = config.num_agents;

    std::vector<Rng> rngs;
    rngs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        rngs.emplace_back(s.base_seed + i);
    }

    // Written by the coordinator only between rounds.
    std::vector<double> snapshot = params;
    AgentTask task = [&](std::size_t agent) {
        return collect_packet(generator, snapshot, rngs[agent], s.episodes_per_round, s.gamma,
                              s.normalize_returns, agent);
    };

    std::vector<std::size_t> order = config.collection_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }

    std::optional<AgentPool> pool;
    if (!config.sequential && n > 1) {
        pool.emplace(n, task);
    }

    TrainingHistory history(s.target_window);
    Optimizer optimizer(s.optimizer, s.learning_rate, params.size());
    for (std::size_t round = 1; round <= s.max_rounds; ++round) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<GradientPacket> packets;
        std::vector<std::exception_ptr> failures(n);
        if (pool) {
            packets = pool->run_round(failures);
        } else {
            for (std::size_t agent : order) {
                try {
                    packets.push_back(task(agent));
                } catch (...) {
                    failures[agent] = std::current_exception();
                }
            }
        }
        if (std::any_of(failures.begin(), failures.end(), [](const auto& e) { return bool(e); })) {
            abort_round(round, failures);
        }

        const std::vector<double> avg = sync_round(params, packets, optimizer);
        snapshot = params;

        std::sort(packets.begin(), packets.end(),
                  [](const auto& a, const auto& b) { return a.agent < b.agent; });
        RoundRecord record;
        double sum = 0.0;
        for (const auto& p : packets) {
            record.agent_returns.push_back(p.episode_return);
            record.agent_lengths.push_back(p.episode_length);
            record.agent_grad_norms.push_back(p.norm());
            sum += p.episode_return;
        }
        record.mean_return = sum / static_cast<double>(n);
        record.grad_norm = l2_norm(avg);
        record.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        const RoundRecord& stored = history.append(std::move(record));
        if (observer) {
            observer(stored, params);
        }
        if (s.stop_at_target) {
            const auto avg_return = history.trailing_mean(s.target_window);
            if (avg_return && *avg_return >= s.target_reward) {
                break;
            }
        }
    }
    return history;
}

} // namespace dqtrl
