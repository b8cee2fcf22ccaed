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

#include <gtest/gtest.h>

#include <sstream>

#include "dqtrl/errors.hpp"
#include "dqtrl/qsim.hpp"
#include "dqtrl/verify.hpp"

using namespace dqtrl;

TEST(Verify, AllSuitesPass) {
    const VerifyReport report = run_verify(VerifySuite::kAll);
    std::ostringstream out;
    report.print(out);
    EXPECT_TRUE(report.passed()) << out.str();
    EXPECT_LT(report.seconds, 60.0);
    EXPECT_GE(report.checks.size(), 20u);
}

TEST(Verify, ReportListsMaxError) {
    const VerifyReport report = run_verify(VerifySuite::kOracle);
    std::ostringstream out;
    report.print(out);
    EXPECT_NE(out.str().find("max_err="), std::string::npos);
    for (const CheckResult& c : report.checks) {
        EXPECT_EQ(c.suite, "oracle");
    }
}

TEST(Verify, SuiteNames) {
    EXPECT_EQ(parse_verify_suite("gradient"), VerifySuite::kGradient);
    EXPECT_EQ(parse_verify_suite("env"), VerifySuite::kEnv);
    EXPECT_EQ(parse_verify_suite("all"), VerifySuite::kAll);
    EXPECT_THROW(parse_verify_suite("everything"), ConfigError);
}

// Mutation check: a shift rule with a flipped sign must be caught.
TEST(Verify, SignFlippedShiftRuleFails) {
    const WeightedGradFn flipped = [](const AnsatzShape& s, std::span<const double> a,
                                      std::span<const double> w) {
        auto g = weighted_prob_gradient(s, a, w, GradientMethod::kParameterShift);
        for (double& x : g) {
            x = -x;
        }
        return g;
    };
    EXPECT_FALSE(check_shift_rule(flipped, 2024).passed);
}

// Mutation check: dropping the 1/2 factor of the shift rule must be caught.
TEST(Verify, UnscaledShiftRuleFails) {
    const WeightedGradFn doubled = [](const AnsatzShape& s, std::span<const double> a,
                                      std::span<const double> w) {
        auto g = weighted_prob_gradient(s, a, w, GradientMethod::kParameterShift);
        for (double& x : g) {
            x *= 2.0;
        }
        return g;
    };
    EXPECT_FALSE(check_shift_rule(doubled, 2024).passed);
}

TEST(Verify, CorrectShiftRulePasses) {
    const WeightedGradFn exact = [](const AnsatzShape& s, std::span<const double> a,
                                    std::span<const double> w) {
        return weighted_prob_gradient(s, a, w, GradientMethod::kAdjoint);
    };
    EXPECT_TRUE(check_shift_rule(exact, 7).passed);
}
