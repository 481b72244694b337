// Copyright 2026 The collide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "collide/collision.hpp"
#include "collide/entanglement.hpp"
#include "collide/observables.hpp"
#include "collide/qstate.hpp"

using namespace collide;

namespace {

PureState random_state(std::size_t n_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
    for (auto &a : v) a = Complex{normal(rng), normal(rng)};
    return PureState(n_qubits, v.normalized());
}

void BM_collision_step(benchmark::State &state) {
    const auto n_env = static_cast<std::size_t>(state.range(0));
    PureState s = random_state(n_env + 1, 1);
    const CollisionSequence seq = sequence_random(4096, n_env, 2);
    std::size_t k = 0;
    for (auto _ : state) {
        s = apply_collision(std::move(s), seq.indices[k++ & 4095], std::numbers::pi / 10.0);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_collision_step)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_trajectory(benchmark::State &state) {
    const auto steps = static_cast<std::size_t>(state.range(0));
    const PureState initial = tensor(single_qubit_from_angles(2.0 * std::numbers::pi / 5.0), PureState::basis(2, 0));
    const CollisionSequence seq = sequence_random(steps, 2, 3);
    for (auto _ : state) {
        Trajectory traj = evolve(initial, {std::numbers::pi / 10.0, 2}, seq);
        double z = 0.0;
        traj.for_each([&](std::size_t, const PureState &s) { z += bloch_vector(s, 0).z; });
        benchmark::DoNotOptimize(z);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_trajectory)->Arg(100'000);

void BM_density_collision(benchmark::State &state) {
    DensityOperator rho = to_density(random_state(3, 4));
    std::size_t k = 0;
    for (auto _ : state) {
        rho = apply_collision(rho, 1 + (k++ & 1), 0.3);
        benchmark::DoNotOptimize(rho.matrix().data());
    }
}
BENCHMARK(BM_density_collision);

void BM_bloch_vector(benchmark::State &state) {
    const PureState s = random_state(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(bloch_vector(s, 0));
}
BENCHMARK(BM_bloch_vector)->Arg(3)->Arg(10);

void BM_tangle_report(benchmark::State &state) {
    const PureState s = random_state(3, 6);
    for (auto _ : state) benchmark::DoNotOptimize(tangle_report(s));
}
BENCHMARK(BM_tangle_report);

void BM_mixed_tangle(benchmark::State &state) {
    const DensityOperator rho = reduced_density(random_state(3, 7), {0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(tangle(rho));
}
BENCHMARK(BM_mixed_tangle);

void BM_self_correlation(benchmark::State &state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const std::size_t max_lag = 1000;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    std::vector<double> d(samples + max_lag + 1);
    for (double &x : d) x = normal(rng);
    for (auto _ : state) benchmark::DoNotOptimize(self_correlation(d, samples, max_lag));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples * (max_lag + 1)));
}
BENCHMARK(BM_self_correlation)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
