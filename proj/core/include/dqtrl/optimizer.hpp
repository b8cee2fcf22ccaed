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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dqtrl {

enum class OptimizerKind {
    /// params += lr * grad
    kPlainAscent,
    /// Adam moment estimates fed with the (averaged) gradient, ascent direction.
    kAdam,
};

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& name);

/// Gradient-ascent optimizer over one flat parameter vector.
class Optimizer {
  public:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEpsilon = 1e-8;

    Optimizer(OptimizerKind kind, double learning_rate, std::size_t size);

    void ascend(std::span<double> params, std::span<const double> grad);

    OptimizerKind kind() const { return kind_; }
    double learning_rate() const { return learning_rate_; }
    std::size_t steps() const { return steps_; }

  private:
    OptimizerKind kind_;
    double learning_rate_;
    std::size_t steps_ = 0;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
};

} // namespace dqtrl
