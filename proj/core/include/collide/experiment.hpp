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

#pragma once

// Experiment description, validation, JSON round-trip and the runner that
// streams a trajectory into CSV files plus a metadata record.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collide/collision.hpp"
#include "collide/observables.hpp"
#include "collide/qstate.hpp"

namespace collide {

enum class EnvPreset { zeros, bell, custom };

struct EnvironmentSpec {
    EnvPreset preset = EnvPreset::zeros;
    /// Amplitudes of the N-qubit environment state when preset == custom (normalized on use).
    std::vector<Complex> amplitudes;

    friend bool operator==(const EnvironmentSpec &, const EnvironmentSpec &) = default;
};

/// "zeros" | "bell" | "custom:<a0>,<a1>,..." where each entry is "re" or "re:im".
EnvironmentSpec parse_environment(std::string_view text);
std::string format_environment(const EnvironmentSpec &env);

struct SequenceSpec {
    SequenceKind kind = SequenceKind::random;
    std::uint64_t seed = 1;
    /// Used when kind == explicit_list.
    std::vector<std::uint32_t> indices;

    friend bool operator==(const SequenceSpec &, const SequenceSpec &) = default;
};

/// "random" | "periodic" | "explicit:<i1>,<i2>,...". The seed is kept from `base`.
SequenceSpec parse_sequence(std::string_view text, SequenceSpec base = {});

enum class Record { bloch, avg_deviation, tangles, correlations, residuals };

std::string_view to_string(Record record);
Record parse_record(std::string_view text);

enum class Evolution { state_vector, density };

struct CorrelationSpec {
    /// T in the finite-sample estimator.
    std::size_t samples = 1'000'000;
    std::size_t max_lag = 1'000;

    friend bool operator==(const CorrelationSpec &, const CorrelationSpec &) = default;
};

struct RunConfig {
    double eta = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    std::size_t n_env = 2;
    EnvironmentSpec env_preset;
    SequenceSpec sequence;
    /// Unset: explicit sequences use their length, correlation runs use
    /// samples + max_lag, everything else 10^4.
    std::optional<std::size_t> steps;
    std::vector<Record> record{Record::bloch};
    CorrelationSpec correlations;
    /// Output row cadence; running averages still use every step.
    std::size_t every = 1;
    std::filesystem::path output = "collide-out";
    bool emit_metadata = true;
    Evolution evolution = Evolution::state_vector;
    /// Window in t for the log-log slope of |<Delta b_z>|; hi <= 0 means "up to steps".
    FitWindow slope_window{100.0, 0.0};

    bool records(Record r) const;
    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

/// Default config: eta = pi/10, theta = 2 pi/5, |00> environment.
RunConfig default_config();

/// Fills in steps and throws ConfigError on any inconsistency.
RunConfig resolve(RunConfig config);

std::string to_json(const RunConfig &config);
/// Strict: unknown fields are rejected. Missing fields take default_config() values.
RunConfig config_from_json(std::string_view json);

/// Initial register state: single_qubit_from_angles(theta, phi) (x) environment.
PureState initial_state(const RunConfig &config);
CollisionSequence build_sequence(const RunConfig &config);

struct RunResult {
    std::vector<std::filesystem::path> files;
    /// max over steps and components of |B(t) - B(0)|.
    double max_total_bloch_drift = 0.0;
    /// Log-log slope of |<Delta b_iz>(t)| over the slope window, per qubit (NaN if not fittable).
    std::vector<double> slopes;
    double duration_seconds = 0.0;
};

/// Writes one CSV per recorded family plus metadata.json into config.output.
RunResult run(const RunConfig &config);

struct SweepResult {
    std::vector<std::uint64_t> seeds;
    /// slopes[k][q]: slope of qubit q for seeds[k].
    std::vector<std::vector<double>> slopes;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::filesystem::path summary;
};

/// Runs `base` once per seed into <output>/seed-<seed>/ and writes
/// <output>/sweep.csv. Seeds run on up to `threads` workers (0: hardware concurrency).
SweepResult sweep(const RunConfig &base, std::span<const std::uint64_t> seeds, unsigned threads = 0);

std::vector<std::string> recipe_names();
/// Built-in figure setups; nullopt for unknown names.
std::optional<RunConfig> recipe(std::string_view name);

/// "0.31", "pi", "-pi/4", "2pi/5", "2*pi/5".
double parse_angle(std::string_view text);

std::string_view version();

}  // namespace collide
