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
 * @file verify.hpp
 * @brief Self-check suites run by `dqtrl verify`: finite-difference
 * gradient checks, reference-oracle comparisons and the environment
 * contract.
 */

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dqtrl/qsim.hpp"

namespace dqtrl {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    /// Largest deviation observed (absolute unless the name says relative).
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool passed() const;
    void print(std::ostream& out) const;
};

enum class VerifySuite {
    kGradient,
    kOracle,
    kEnv,
    kAll,
};

VerifySuite parse_verify_suite(const std::string& name);

VerifyReport run_verify(VerifySuite suite, std::uint64_t seed = 2024);

using WeightedGradFn = std::function<std::vector<double>(
    const AnsatzShape&, std::span<const double> angles, std::span<const double> weights)>;

/// Shift-rule gradient against central differences (eps 1e-5, tol 1e-6) on
/// >= 20 random circuits with n <= 6, L <= 3. `gradient` is injectable so a
/// deliberately broken rule can be shown to fail.
CheckResult check_shift_rule(const WeightedGradFn& gradient, std::uint64_t seed = 2024,
                             int draws = 24);

std::vector<CheckResult> gradient_checks(std::uint64_t seed);
std::vector<CheckResult> oracle_checks(std::uint64_t seed);
std::vector<CheckResult> env_checks(std::uint64_t seed);

/// Success rate of a uniform-random agent over `episodes` seeded episodes.
double random_agent_success_rate(std::size_t episodes, std::uint64_t seed, double* mean_reward = nullptr);

} // namespace dqtrl
