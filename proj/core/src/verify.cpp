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

#include "dqtrl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>

#include "dqtrl/errors.hpp"
#include "dqtrl/gridworld.hpp"
#include "dqtrl/mapper.hpp"
#include "dqtrl/oracles.hpp"
#include "dqtrl/policy_net.hpp"
#include "dqtrl/qt_gen.hpp"
#include "dqtrl/rng.hpp"
#include "dqtrl/trainer.hpp"

namespace dqtrl {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_vector(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// |a - b| / max(1, |b|): relative for large entries, absolute near zero.
double max_rel_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    }
    return worst;
}

CheckResult make(std::string suite, std::string name, double error, double tol,
                 std::string detail = {}) {
    return {std::move(suite), std::move(name), error <= tol, error, tol, std::move(detail)};
}

CheckResult boolean_check(std::string suite, std::string name, bool ok, std::string detail = {}) {
    return {std::move(suite), std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

// The scalar S(params) = (1/T) sum_t log pi_theta(params)(a_t | s_t) * Ghat_t with
// Ghat frozen, evaluated with the oracle forward pass.
double frozen_objective(const PolicyGenerator& gen, std::span<const double> params,
                        const Trajectory& traj, std::span<const double> weights) {
    const std::vector<double> theta = gen.generate(params);
    double total = 0.0;
    for (std::size_t t = 0; t < traj.length(); ++t) {
        const auto probs = oracle::policy_forward(gen.topology(), theta, traj.observations[t]);
        total += std::log(probs[traj.actions[t]]) * weights[t];
    }
    return total / static_cast<double>(traj.length());
}

double frozen_trajectory_error(const PolicyGenerator& gen, std::span<const double> params,
                               const Trajectory& traj, double gamma, bool normalize) {
    std::vector<double> weights = compute_returns(traj.rewards, gamma);
    if (normalize && traj.length() >= 2) {
        weights = standardize(weights);
    }
    const GradientPacket packet = episode_gradient(gen, params, traj, gamma, normalize);
    const auto fd = oracle::central_difference(
        [&](std::span<const double> p) { return frozen_objective(gen, p, traj, weights); }, params,
        1e-6);
    return max_abs_diff(packet.grad, fd);
}

} // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

void VerifyReport::print(std::ostream& out) const {
    for (const CheckResult& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(10) << c.suite
            << std::setw(40) << c.name << " max_err=" << std::scientific << std::setprecision(3)
            << c.max_error << " tol=" << c.tolerance << std::defaultfloat;
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ")";
        }
        out << '\n';
    }
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; });
    out << checks.size() - failed << '/' << checks.size() << " checks passed in " << std::fixed
        << std::setprecision(2) << seconds << " s" << std::defaultfloat << '\n';
}

VerifySuite parse_verify_suite(const std::string& name) {
    if (name == "gradient") return VerifySuite::kGradient;
    if (name == "oracle") return VerifySuite::kOracle;
    if (name == "env") return VerifySuite::kEnv;
    if (name == "all" || name.empty()) return VerifySuite::kAll;
    throw ConfigError("unknown verify suite '" + name + "' (expected gradient, oracle, env or all)");
}

CheckResult check_shift_rule(const WeightedGradFn& gradient, std::uint64_t seed, int draws) {
    Rng rng(seed);
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
        const AnsatzShape shape{1 + d % 6, 1 + (d / 6) % 3};
        const auto angles = uniform_vector(rng, shape.num_angles(), -kPi, kPi);
        const auto weights = uniform_vector(rng, shape.dimension(), -1.0, 1.0);
        const auto grad = gradient(shape, angles, weights);
        if (grad.size() != angles.size()) {
            return boolean_check("gradient", "qsim shift rule vs central diff", false,
                                 "gradient has the wrong length");
        }
        const auto fd = oracle::central_difference(
            [&](std::span<const double> a) { return weighted_prob_sum(shape, a, weights); },
            angles, 1e-5);
        worst = std::max(worst, max_abs_diff(grad, fd));
    }
    return make("gradient", "qsim shift rule vs central diff", worst, 1e-6,
                std::to_string(draws) + " circuits, n<=6, L<=3, eps 1e-5");
}

std::vector<CheckResult> gradient_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(check_shift_rule(
        [](const AnsatzShape& s, std::span<const double> a, std::span<const double> w) {
            return weighted_prob_gradient(s, a, w, GradientMethod::kParameterShift);
        },
        seed));

    {
        Rng rng(seed + 1);
        double worst = 0.0;
        for (int d = 0; d < 24; ++d) {
            const AnsatzShape shape{1 + d % 6, 1 + (d / 6) % 3};
            const auto angles = uniform_vector(rng, shape.num_angles(), -kPi, kPi);
            const auto weights = uniform_vector(rng, shape.dimension(), -1.0, 1.0);
            const auto shift = weighted_prob_gradient(shape, angles, weights, GradientMethod::kParameterShift);
            const auto adj = weighted_prob_gradient(shape, angles, weights, GradientMethod::kAdjoint);
            worst = std::max(worst, max_abs_diff(adj, shift));
        }
        out.push_back(make("gradient", "qsim adjoint vs shift rule", worst, 1e-9, "24 circuits"));
    }

    {
        Rng rng(seed + 2);
        double worst_beta = 0.0;
        double worst_prob = 0.0;
        for (int d = 0; d < 50; ++d) {
            const int n = 1 + d % 6;
            const MappingShape shape{n};
            auto beta = init_mapping_params(shape, rng);
            for (double& b : beta) {
                b *= 2.0;
            }
            const std::size_t index = rng.next_u64() % (std::size_t{1} << n);
            const double prob = rng.uniform() * std::min(1.0, 3.0 / shape.prob_scale());
            const double upstream = rng.uniform(-2.0, 2.0);
            const MapInput input = MapInput::for_basis_state(n, index, prob);
            const MapGradient g = map_backward(shape, beta, input, upstream);

            const auto fd_beta = oracle::central_difference(
                [&](std::span<const double> b) { return upstream * map_forward(shape, b, input); },
                beta, 1e-6);
            worst_beta = std::max(worst_beta, max_rel_diff(g.beta, fd_beta));

            const std::vector<double> p0{prob};
            const auto fd_prob = oracle::central_difference(
                [&](std::span<const double> p) {
                    return upstream * map_forward(shape, beta, MapInput::for_basis_state(n, index, p[0]));
                },
                p0, 1e-6);
            const std::vector<double> got{g.prob};
            worst_prob = std::max(worst_prob, max_rel_diff(got, fd_prob));
        }
        out.push_back(make("gradient", "mapper d/dbeta vs central diff (rel)", worst_beta, 1e-6,
                           "50 draws, eps 1e-6"));
        out.push_back(make("gradient", "mapper d/dp vs central diff (rel)", worst_prob, 1e-6,
                           "50 draws, eps 1e-6"));
    }

    {
        Rng rng(seed + 3);
        const QtShape shape{4, 2, 10};
        double worst = 0.0;
        for (int d = 0; d < 5; ++d) {
            const GlobalModel model = GlobalModel::initialize(shape, seed + 100 + d);
            const auto g = uniform_vector(rng, shape.generated, -1.0, 1.0);
            const auto fd = oracle::central_difference(
                [&](std::span<const double> p) {
                    const auto theta = generate_theta(shape, p);
                    double s = 0.0;
                    for (std::size_t i = 0; i < theta.size(); ++i) {
                        s += g[i] * theta[i];
                    }
                    return s;
                },
                model.params(), 1e-6);
            for (GradientMethod m : {GradientMethod::kParameterShift, GradientMethod::kAdjoint}) {
                worst = std::max(worst, max_abs_diff(pullback_gradient(model, g, m), fd));
            }
        }
        out.push_back(make("gradient", "qt-gen pullback vs central diff", worst, 1e-5,
                           "n=4, L=2, k=10, shift and adjoint"));
    }

    {
        Rng rng(seed + 4);
        double worst = 0.0;
        double worst_score = 0.0;
        PolicyTopology relu = PolicyTopology::generated_default();
        relu.activation = Activation::kRelu;
        for (const PolicyTopology& t :
             {PolicyTopology::generated_default(), PolicyTopology::classical_baseline(), relu}) {
            const auto theta = uniform_vector(rng, t.num_params(), -0.5, 0.5);
            const auto obs = uniform_vector(rng, t.inputs, 0.0, 1.0);
            const int action = static_cast<int>(rng.next_u64() % t.actions);
            const auto grad = logpi_grad(t, theta, obs, action);
            const auto fd = oracle::central_difference(
                [&](std::span<const double> th) {
                    return std::log(forward(t, th, obs).probs[action]);
                },
                theta, 1e-6);
            worst = std::max(worst, max_rel_diff(grad, fd));

            const auto probs = forward(t, theta, obs).probs;
            std::vector<double> expected(t.num_params(), 0.0);
            for (std::size_t a = 0; a < t.actions; ++a) {
                accumulate_logpi_grad(t, theta, obs, static_cast<int>(a), probs[a], expected);
            }
            for (double e : expected) {
                worst_score = std::max(worst_score, std::abs(e));
            }
        }
        out.push_back(make("gradient", "policy log-pi vs central diff (rel)", worst, 1e-6,
                           "147-6-3 tanh/relu and 147-32-3"));
        out.push_back(make("gradient", "policy score-function zero mean", worst_score, 1e-10));
    }

    {
        // Small synthetic policy: 2 inputs, k = 15 weights on 4 qubits.
        Rng rng(seed + 5);
        const PolicyTopology topo{2, 2, 3, Activation::kTanh};
        const QtShape shape = QtShape::for_generated(topo.num_params(), 2);
        const QtPolicyGenerator gen(shape, topo, GradientMethod::kParameterShift);
        const GlobalModel model = GlobalModel::initialize(shape, seed + 6);
        Trajectory traj;
        traj.theta = gen.generate(model.params());
        for (int t = 0; t < 3; ++t) {
            traj.observations.push_back(uniform_vector(rng, 2, 0.0, 1.0));
        }
        traj.actions = {2, 0, 1};
        traj.rewards = {0.0, 0.0, 1.0};
        double worst = 0.0;
        for (bool normalize : {false, true}) {
            worst = std::max(worst, frozen_trajectory_error(gen, model.params(), traj, 0.9, normalize));
        }
        out.push_back(make("gradient", "trainer frozen trajectory (n=4)", worst, 1e-5,
                           "3 steps, returns raw and standardized"));
    }

    {
        const PolicyTopology topo = PolicyTopology::generated_default();
        const QtShape shape = QtShape::for_generated(topo.num_params(), 3);
        const QtPolicyGenerator gen(shape, topo, GradientMethod::kAdjoint);
        const GlobalModel model = GlobalModel::initialize(shape, seed + 7);
        Rng rng(seed + 8);
        const Trajectory traj = run_episode(gen, model.params(), rng);
        const double err = frozen_trajectory_error(gen, model.params(), traj, 0.99, true);
        out.push_back(make("gradient", "trainer frozen trajectory (n=10, L=3)", err, 1e-5,
                           std::to_string(traj.length()) + "-step gridworld episode"));
    }
    return out;
}

std::vector<CheckResult> oracle_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed + 10);

    {
        double worst = 0.0;
        double worst_norm = 0.0;
        for (int c = 0; c < 50; ++c) {
            const AnsatzShape shape{1 + c % 4, 1 + (c / 4) % 3};
            const auto angles = uniform_vector(rng, shape.num_angles(), -kPi, kPi);
            const StateVector fast = run_ansatz(shape, angles);
            const auto slow = oracle::ansatz_state(shape, angles);
            for (std::size_t i = 0; i < slow.size(); ++i) {
                worst = std::max(worst, std::abs(fast[i] - slow[i]));
            }
            worst_norm = std::max(worst_norm, std::abs(fast.norm_squared() - 1.0));
        }
        for (int n = 5; n <= 10; ++n) {
            const AnsatzShape shape{n, 3};
            const auto angles = uniform_vector(rng, shape.num_angles(), -kPi, kPi);
            worst_norm = std::max(worst_norm, std::abs(run_ansatz(shape, angles).norm_squared() - 1.0));
        }
        out.push_back(make("oracle", "ansatz vs dense unitary", worst, 1e-10, "50 circuits, n<=4"));
        out.push_back(make("oracle", "statevector norm drift", worst_norm, 1e-12, "n<=10"));
    }

    {
        StateVector bell(2);
        apply_u3(bell, 0, kPi / 2.0, 0.0, kPi);
        apply_cnot(bell, 0, 1);
        const auto p = probabilities(bell);
        const std::vector<double> expected{0.5, 0.0, 0.0, 0.5};
        out.push_back(make("oracle", "bell state probabilities", max_abs_diff(p, expected), 1e-12));
    }

    {
        double worst = 0.0;
        for (int n = 1; n <= 10; ++n) {
            const AnsatzShape shape{n, 2};
            const auto p = probabilities(run_ansatz(shape, uniform_vector(rng, shape.num_angles(), -kPi, kPi)));
            double sum = 0.0;
            for (double x : p) {
                sum += x;
                if (x < 0.0) {
                    worst = std::max(worst, -x);
                }
            }
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        out.push_back(make("oracle", "probability normalization", worst, 1e-10));
    }

    {
        double worst = 0.0;
        for (int d = 0; d < 50; ++d) {
            const int n = 1 + d % 10;
            const MappingShape shape{n};
            const auto beta = init_mapping_params(shape, rng);
            const std::size_t index = rng.next_u64() % (std::size_t{1} << n);
            const double prob = rng.uniform();
            const double fast = map_forward(shape, beta, MapInput::for_basis_state(n, index, prob));
            worst = std::max(worst, std::abs(fast - oracle::map_forward(n, beta, index, prob)));
        }
        out.push_back(make("oracle", "mapper vs duplicate arithmetic", worst, 1e-12, "50 draws"));
    }

    {
        const PolicyTopology topo = PolicyTopology::generated_default();
        const QtShape shape = QtShape::for_generated(topo.num_params(), 3);
        const GlobalModel model = GlobalModel::initialize(shape, seed + 11);
        const auto theta = generate_theta(model);
        const auto probs = probabilities(run_ansatz(shape.ansatz(), model.phi()));
        double worst = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            worst = std::max(worst, std::abs(theta[i] - oracle::map_forward(shape.qubits, model.beta(), i, probs[i])));
        }
        out.push_back(make("oracle", "qt-gen vs stage composition", worst, 1e-12, "n=10, L=3, k=909"));
    }

    {
        double worst = 0.0;
        for (const PolicyTopology& t : {PolicyTopology::generated_default(), PolicyTopology::classical_baseline()}) {
            for (int d = 0; d < 10; ++d) {
                const auto theta = uniform_vector(rng, t.num_params(), -1.0, 1.0);
                const auto obs = uniform_vector(rng, t.inputs, 0.0, 1.0);
                worst = std::max(worst, max_abs_diff(forward(t, theta, obs).probs,
                                                     oracle::policy_forward(t, theta, obs)));
            }
        }
        out.push_back(make("oracle", "policy forward vs duplicate arithmetic", worst, 1e-12));
    }
    return out;
}

double random_agent_success_rate(std::size_t episodes, std::uint64_t seed, double* mean_reward) {
    Rng rng(seed);
    std::size_t successes = 0;
    double total = 0.0;
    for (std::size_t e = 0; e < episodes; ++e) {
        auto [state, obs] = reset(seed + e);
        double reward = 0.0;
        while (!state.done) {
            const int a = static_cast<int>(rng.uniform() * grid::kNumActions);
            const StepResult r = step(state, action_from_index(a));
            state = r.state;
            reward += r.reward;
        }
        total += reward;
        successes += reward > 0.0 ? 1 : 0;
    }
    if (mean_reward != nullptr) {
        *mean_reward = episodes ? total / static_cast<double>(episodes) : 0.0;
    }
    return episodes ? static_cast<double>(successes) / static_cast<double>(episodes) : 0.0;
}

std::vector<CheckResult> env_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const auto [start, obs0] = reset(seed);
    out.push_back(boolean_check("env", "reset layout",
                                start.agent_pos == Position{1, 1} &&
                                    start.agent_dir == Direction::kEast &&
                                    start.goal_pos == Position{3, 3} && start.step_count == 0 &&
                                    !start.done));
    out.push_back(boolean_check("env", "reset determinism", reset(seed).obs == reset(seed + 1).obs));

    // Goal two cells ahead and two to the right: window cell (5, 4).
    const std::size_t goal_cell = (5 * grid::kView + 4) * grid::kChannels;
    out.push_back(boolean_check("env", "initial goal at egocentric (5,4)",
                                obs0[goal_cell] == grid::kObjectGoal / grid::kObjectMax));

    {
        EnvState s = start;
        double reward = 0.0;
        bool done = false;
        for (Action a : {Action::kForward, Action::kForward, Action::kRight, Action::kForward,
                         Action::kForward}) {
            const StepResult r = step(s, a);
            s = r.state;
            reward = r.reward;
            done = r.done;
        }
        const bool ok = done && s.step_count == 5 && s.agent_pos == Position{3, 3};
        out.push_back(make("env", "shortest path reward 0.955", ok ? std::abs(reward - 0.955) : 1.0,
                           1e-12));
    }

    {
        const StepResult turned = step(start, Action::kLeft);
        const StepResult bumped = step(turned.state, Action::kForward);
        out.push_back(boolean_check("env", "wall blocks forward",
                                    bumped.state.agent_pos == start.agent_pos &&
                                        bumped.state.step_count == 2 && bumped.reward == 0.0 &&
                                        !bumped.done));
    }

    {
        EnvState s = start;
        double total = 0.0;
        int steps = 0;
        while (!s.done) {
            const StepResult r = step(s, Action::kLeft);
            s = r.state;
            total += r.reward;
            ++steps;
        }
        bool threw = false;
        try {
            step(s, Action::kLeft);
        } catch (const ContractViolation&) {
            threw = true;
        }
        out.push_back(boolean_check("env", "step cap 100 with zero reward",
                                    steps == grid::kMaxSteps && total == 0.0 && threw));
    }

    {
        std::set<Observation> distinct;
        EnvState s = start;
        for (int r = 0; r < 4; ++r) {
            distinct.insert(encode_obs(s));
            s = step(s, Action::kRight).state;
        }
        out.push_back(boolean_check("env", "rotation changes the view", distinct.size() >= 2,
                                    std::to_string(distinct.size()) + " distinct views"));
    }

    {
        Rng rng(seed + 20);
        bool in_range = true;
        bool deterministic = true;
        for (int e = 0; e < 50; ++e) {
            EnvState s = start;
            while (!s.done) {
                const Action a = action_from_index(static_cast<int>(rng.uniform() * 3));
                const StepResult r1 = step(s, a);
                const StepResult r2 = step(s, a);
                deterministic = deterministic && r1.state == r2.state && r1.obs == r2.obs &&
                                r1.reward == r2.reward;
                for (double x : r1.obs) {
                    in_range = in_range && x >= 0.0 && x <= 1.0;
                }
                s = r1.state;
            }
        }
        out.push_back(boolean_check("env", "observations within [0,1]", in_range));
        out.push_back(boolean_check("env", "transition determinism", deterministic));
    }

    {
        double mean = 0.0;
        const double rate = random_agent_success_rate(1000, seed + 30, &mean);
        out.push_back(boolean_check("env", "random agent solves the task", rate > 0.0,
                                    "success rate " + std::to_string(rate) + ", mean reward " +
                                        std::to_string(mean)));
    }
    return out;
}

VerifyReport run_verify(VerifySuite suite, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport report;
    auto append = [&](std::vector<CheckResult> checks) {
        report.checks.insert(report.checks.end(), checks.begin(), checks.end());
    };
    if (suite == VerifySuite::kGradient || suite == VerifySuite::kAll) {
        append(gradient_checks(seed));
    }
    if (suite == VerifySuite::kOracle || suite == VerifySuite::kAll) {
        append(oracle_checks(seed));
    }
    if (suite == VerifySuite::kEnv || suite == VerifySuite::kAll) {
        append(env_checks(seed));
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace dqtrl
