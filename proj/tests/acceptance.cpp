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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [scratch-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collide/collision.hpp"
#include "collide/entanglement.hpp"
#include "collide/experiment.hpp"
#include "collide/observables.hpp"
#include "collide/qstate.hpp"

using namespace collide;
namespace fs = std::filesystem;

namespace {

constexpr double kEta = std::numbers::pi / 10.0;
constexpr double kTheta = 2.0 * std::numbers::pi / 5.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

PureState psi00() { return tensor(single_qubit_from_angles(kTheta), PureState::basis(2, 0)); }

// C_0z(lag) for lag = 0..max_lag from a trajectory of samples + max_lag steps.
std::vector<double> c0z(const CollisionSequence &seq, std::size_t samples, std::size_t max_lag) {
    const PureState initial = psi00();
    const double reference = equipartition_reference(initial).z;
    std::vector<double> d;
    d.reserve(samples + max_lag + 1);
    Trajectory traj = evolve(initial, {kEta, 2}, seq);
    traj.for_each([&](std::size_t, const PureState &s) { d.push_back(bloch_vector(s, 0).z - reference); });
    return self_correlation(d, samples, max_lag);
}

Outcome conservation() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t n_env = 2 + static_cast<std::size_t>(k % 3);
        const double eta = angle(rng), theta = angle(rng), phi = 2.0 * angle(rng);
        const PureState initial = tensor(single_qubit_from_angles(theta, phi), PureState::basis(n_env, 0));
        const Vec3 b0 = total_bloch_vector(initial);
        Trajectory traj = evolve(initial, {eta, n_env}, sequence_random(100'000, n_env, rng()));
        traj.for_each([&](std::size_t, const PureState &s) { worst = std::max(worst, (total_bloch_vector(s) - b0).max_abs()); });
    }
    return {worst < 1e-9, fmt("max |B(t)-B(0)| = %.3g over 20 configs x 1e5 steps (limit 1e-9)", worst)};
}

Outcome unitarity() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    double unitarity = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Eigen::Matrix4cd u = partial_swap_pair(angle(rng));
        unitarity = std::max(unitarity, (u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff());
    }
    Trajectory traj = evolve(psi00(), {kEta, 2}, sequence_random(1'000'000, 2, 11));
    traj.for_each([](std::size_t, const PureState &) {});
    const double drift = std::abs(traj.state().norm_squared() - 1.0);
    return {unitarity < 1e-12 && drift < 1e-8,
            fmt("unitarity error %.3g (limit 1e-12), norm drift after 1e6 steps %.3g (limit 1e-8)", unitarity, drift)};
}

Outcome one_step() {
    const double bz = bloch_vector(apply_collision(psi00(), 1, kEta), 0).z;
    const double err = std::abs(bz - 0.375);
    return {err < 1e-12, fmt("b0z(1) = %.17g, error %.3g (limit 1e-12)", bz, err)};
}

Outcome diffusive(const fs::path &scratch) {
    RunConfig config = default_config();
    config.steps = 1'000'000;
    config.record = {Record::avg_deviation};
    config.every = 100'000;
    config.emit_metadata = false;
    config.slope_window = {1e3, 1e6};
    config.output = scratch / "diffusive";
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 20; ++k) seeds.push_back(stream_seed(2024, k));
    const SweepResult result = sweep(config, seeds);
    bool pass = true;
    std::string detail = "mean slopes over 20 seeds:";
    for (std::size_t q = 0; q < result.mean.size(); ++q) {
        pass = pass && result.mean[q] >= -0.6 && result.mean[q] <= -0.4;
        detail += fmt(" b%zuz %.3f", q, result.mean[q]);
    }
    return {pass, detail + " (band [-0.6, -0.4])"};
}

Outcome regime_separation() {
    constexpr std::size_t kT = 1'000'000, kMaxLag = 2'000, kPlateauFrom = 1'000;
    const std::vector<double> random = c0z(sequence_random(kT + kMaxLag, 2, 1), kT, kMaxLag);
    const std::vector<double> periodic = c0z(sequence_periodic(kT + kMaxLag, 2), kT, kMaxLag);
    const double plateau = plateau_level(random, kPlateauFrom);
    const double persistence = oscillation_persistence(periodic, kPlateauFrom);

    const FitWindow window = pre_plateau_window(random, plateau);
    const PeakEnvelope envelope = peak_envelope(random);
    const ExpDecayFit fit = exp_decay_fit(envelope.lags, envelope.values, window);

    double small_t = 0.0, large_t = 0.0;
    constexpr int kSeeds = 4;
    for (std::uint64_t k = 0; k < kSeeds; ++k) {
        const std::uint64_t seed = stream_seed(2024, k);
        small_t += plateau_level(c0z(sequence_random(10'000 + kMaxLag, 2, seed), 10'000, kMaxLag), kPlateauFrom) / kSeeds;
        large_t += plateau_level(c0z(sequence_random(kT + kMaxLag, 2, seed), kT, kMaxLag), kPlateauFrom) / kSeeds;
    }
    const double ratio = small_t / large_t;
    const bool pass = persistence > 10.0 * plateau && fit.r_squared > 0.9 && ratio >= 3.0 && ratio <= 30.0;
    return {pass, fmt("periodic persistence %.3g vs 10x random plateau %.3g; exp fit rate %.3g r2 %.4f (limit 0.9) "
                      "over lags [0, %.0f]; plateau ratio T=1e4/T=1e6 %.2f (band [3, 30])",
                      persistence, 10.0 * plateau, fit.rate, fit.r_squared, window.hi, ratio)};
}

Outcome tangle_oracles() {
    double worst = 0.0;
    worst = std::max(worst, std::abs(tangle(to_density(bell_pair())) - 1.0) / 1e-10);
    const TangleReport w = tangle_report(w_state(3));
    for (double t : {w.tau_01, w.tau_02, w.tau_12}) worst = std::max(worst, std::abs(t - 4.0 / 9.0) / 1e-9);
    for (double t : {*w.tau_0_rest, *w.tau_1_rest, *w.tau_2_rest}) worst = std::max(worst, std::abs(t - 8.0 / 9.0) / 1e-9);
    worst = std::max(worst, std::abs(three_tangle(ghz_state(3)) - 1.0) / 1e-9);

    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    double spread = 0.0, slack = 1.0;
    for (int k = 0; k < 200; ++k) {
        Eigen::VectorXcd v(8);
        for (auto &a : v) a = Complex{normal(rng), normal(rng)};
        const PureState s(3, v.normalized());
        const auto roots = three_tangle_by_root(s);
        spread = std::max({spread, std::abs(roots[0] - roots[1]), std::abs(roots[0] - roots[2])});
        const TangleReport r = tangle_report(s);
        slack = std::min({slack, *r.tau_0_rest - r.tau_01 - r.tau_02, *r.tau_1_rest - r.tau_01 - r.tau_12,
                          *r.tau_2_rest - r.tau_02 - r.tau_12});
    }
    return {worst < 1.0 && spread < 1e-8 && slack >= -1e-9,
            fmt("worst oracle error / tolerance %.3g; root spread %.3g (limit 1e-8); min CKW slack %.3g (limit -1e-9)",
                worst, spread, slack)};
}

Outcome w_closure() {
    const WSpanProjector span(3, single_qubit_from_angles(kTheta), PureState::basis(1, 0));
    double residual = 0.0, three = 0.0;
    for (const CollisionSequence &seq : {sequence_random(10'000, 2, 1), sequence_periodic(10'000, 2)}) {
        Trajectory traj = evolve(psi00(), {kEta, 2}, seq);
        traj.for_each([&](std::size_t, const PureState &s) {
            residual = std::max(residual, span.residual(s));
            three = std::max(three, std::abs(three_tangle(s)));
        });
    }
    return {residual < 1e-9 && three < 1e-8,
            fmt("max W-span residual %.3g (limit 1e-9), max |three-tangle| %.3g (limit 1e-8)", residual, three)};
}

Outcome ghz_closure() {
    double residual = 0.0, pair = 0.0;
    for (const CollisionSequence &seq : {sequence_random(10'000, 2, 1), sequence_periodic(10'000, 2)}) {
        Trajectory traj = evolve(ghz_state(3), {kEta, 2}, seq);
        traj.for_each([&](std::size_t, const PureState &s) {
            residual = std::max(residual, ghz_span_residual(s));
            pair = std::max({pair, pair_tangle(s, 0, 1), pair_tangle(s, 0, 2), pair_tangle(s, 1, 2)});
        });
    }
    return {residual < 1e-9 && pair < 1e-8,
            fmt("max GHZ-span residual %.3g (limit 1e-9), max pairwise tangle %.3g (limit 1e-8)", residual, pair)};
}

TangleReport averaged_tangles(EnvPreset preset) {
    RunConfig config = default_config();
    config.env_preset = {preset, {}};
    RunningTangles running;
    Trajectory traj = evolve(initial_state(config), {kEta, 2}, sequence_random(1'000'000, 2, 1));
    traj.for_each([&](std::size_t, const PureState &s) { running.add(tangle_report(s)); });
    return running.mean();
}

Outcome saturation() {
    const TangleReport sep = averaged_tangles(EnvPreset::zeros);
    const TangleReport bell = averaged_tangles(EnvPreset::bell);
    const double spread = std::max({sep.tau_01, sep.tau_02, sep.tau_12}) - std::min({sep.tau_01, sep.tau_02, sep.tau_12});
    const bool pass = spread < 0.01 && *sep.tau_012 < 1e-6 && *bell.tau_012 > 0.01;
    return {pass, fmt("separable: <tau01,02,12> = %.5f %.5f %.5f, spread %.3g (limit 0.01), <tau012> %.3g (limit 1e-6); "
                      "bell: <tau012> %.4f (limit > 0.01)",
                      sep.tau_01, sep.tau_02, sep.tau_12, spread, *sep.tau_012, *bell.tau_012)};
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Outcome determinism(const fs::path &scratch) {
    RunConfig config = default_config();
    config.steps = 10'000;
    config.record = {Record::bloch, Record::avg_deviation, Record::tangles, Record::residuals, Record::correlations};
    config.correlations = {5'000, 500};
    config.sequence.seed = 31;
    RunConfig again = config;
    config.output = scratch / "determinism-a";
    again.output = scratch / "determinism-b";
    const RunResult a = run(config);
    run(again);
    std::size_t compared = 0;
    bool identical = true;
    for (const fs::path &file : a.files) {
        if (file.extension() != ".csv") continue;
        identical = identical && slurp(file) == slurp(again.output / file.filename());
        ++compared;
    }
    return {identical && compared == 5, fmt("%zu CSV files compared, %s", compared, identical ? "byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char **argv) {
    const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "collide-acceptance";
    fs::remove_all(scratch);

    struct Criterion {
        const char *name;
        double budget_seconds;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"conservation", 30.0, conservation},
        {"unitarity-normalization", 10.0, unitarity},
        {"one-step-oracle", 1.0, one_step},
        {"diffusive-averaging", 120.0, [&] { return diffusive(scratch); }},
        {"regime-separation", 180.0, regime_separation},
        {"tangle-oracles", 10.0, tangle_oracles},
        {"w-class-closure", 30.0, w_closure},
        {"ghz-family-closure", 30.0, ghz_closure},
        {"tangle-saturation", 120.0, saturation},
        {"determinism", 30.0, [&] { return determinism(scratch); }},
    };

    int failures = 0;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds < c.budget_seconds;
        const bool pass = outcome.pass && in_budget;
        failures += !pass;
        std::printf("%s %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str(),
                    seconds, c.budget_seconds, in_budget ? "" : " OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
