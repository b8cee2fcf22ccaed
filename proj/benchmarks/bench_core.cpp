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

#include <benchmark/benchmark.h>

#include <vector>

#include "dqtrl/gridworld.hpp"
#include "dqtrl/qsim.hpp"
#include "dqtrl/qt_gen.hpp"
#include "dqtrl/rng.hpp"
#include "dqtrl/trainer.hpp"

namespace {

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
    dqtrl::Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.uniform(-3.0, 3.0);
    }
    return v;
}

void BM_RunAnsatz(benchmark::State& state) {
    const dqtrl::AnsatzShape shape{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    const auto angles = random_angles(shape.num_angles(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqtrl::run_ansatz(shape, angles));
    }
}
BENCHMARK(BM_RunAnsatz)->Args({10, 3})->Args({10, 13})->Args({14, 3});

void BM_WeightedGradient(benchmark::State& state) {
    const dqtrl::AnsatzShape shape{10, static_cast<int>(state.range(0))};
    const auto method = state.range(1) ? dqtrl::GradientMethod::kAdjoint
                                       : dqtrl::GradientMethod::kParameterShift;
    const auto angles = random_angles(shape.num_angles(), 2);
    const auto weights = random_angles(shape.dimension(), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqtrl::weighted_prob_gradient(shape, angles, weights, method));
    }
    state.SetLabel(state.range(1) ? "adjoint" : "parameter-shift");
}
BENCHMARK(BM_WeightedGradient)->Args({3, 0})->Args({3, 1})->Args({13, 0})->Args({13, 1});

void BM_GenerateTheta(benchmark::State& state) {
    const auto shape = dqtrl::QtShape::for_generated(909, static_cast<int>(state.range(0)));
    const auto model = dqtrl::GlobalModel::initialize(shape, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqtrl::generate_theta(model));
    }
}
BENCHMARK(BM_GenerateTheta)->Arg(3)->Arg(13);

void BM_EpisodeAndGradient(benchmark::State& state) {
    const dqtrl::PolicyTopology topo = dqtrl::PolicyTopology::generated_default();
    const auto shape = dqtrl::QtShape::for_generated(topo.num_params(), static_cast<int>(state.range(0)));
    const dqtrl::QtPolicyGenerator gen(shape, topo);
    const auto model = dqtrl::GlobalModel::initialize(shape, 5);
    dqtrl::Rng rng(6);
    for (auto _ : state) {
        const dqtrl::Trajectory traj = dqtrl::run_episode(gen, model.params(), rng);
        benchmark::DoNotOptimize(dqtrl::episode_gradient(gen, model.params(), traj, 0.99, true));
    }
}
BENCHMARK(BM_EpisodeAndGradient)->Arg(3)->Arg(13);

void BM_GridStep(benchmark::State& state) {
    auto [s, obs] = dqtrl::reset(0);
    int i = 0;
    for (auto _ : state) {
        auto r = dqtrl::step(s, dqtrl::action_from_index(i++ % 3));
        s = r.state.done ? dqtrl::reset(0).state : r.state;
        benchmark::DoNotOptimize(r.obs);
    }
}
BENCHMARK(BM_GridStep);

} // namespace

BENCHMARK_MAIN();
