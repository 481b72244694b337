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

#include "collide/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

#include "collide/csv.hpp"
#include "collide/entanglement.hpp"
#include "collide/errors.hpp"

#ifndef COLLIDE_VERSION
#define COLLIDE_VERSION "0.0.0"
#endif

namespace collide {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultSteps = 10'000;
constexpr std::size_t kSlopePointsPerDecade = 20;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::uint32_t parse_index(std::string_view text) {
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("cannot parse collision index '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string_view version() { return COLLIDE_VERSION; }

double parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    const std::size_t pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        return parse_double(s, "angle");
    }
    std::string_view coeff = trim(s.substr(0, pi_pos));
    std::string_view rest = trim(s.substr(pi_pos + 2));
    if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        factor = parse_double(coeff, "angle coefficient");
    }
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        }
        divisor = parse_double(rest.substr(1), "angle divisor");
        if (divisor == 0.0) {
            throw ConfigError("angle divisor is zero in '" + std::string(text) + "'");
        }
    }
    return factor * std::numbers::pi / divisor;
}

EnvironmentSpec parse_environment(std::string_view text) {
    text = trim(text);
    if (text == "zeros") return {EnvPreset::zeros, {}};
    if (text == "bell") return {EnvPreset::bell, {}};
    constexpr std::string_view prefix = "custom:";
    if (text.substr(0, prefix.size()) != prefix) {
        throw ConfigError("unknown environment '" + std::string(text) + "' (expected zeros, bell or custom:<amps>)");
    }
    EnvironmentSpec env{EnvPreset::custom, {}};
    for (std::string_view entry : split(text.substr(prefix.size()), ',')) {
        const std::size_t colon = entry.find(':');
        if (colon == std::string_view::npos) {
            env.amplitudes.emplace_back(parse_double(entry, "amplitude"), 0.0);
        } else {
            env.amplitudes.emplace_back(parse_double(entry.substr(0, colon), "amplitude"),
                                        parse_double(entry.substr(colon + 1), "amplitude"));
        }
    }
    return env;
}

std::string format_environment(const EnvironmentSpec &env) {
    switch (env.preset) {
        case EnvPreset::zeros:
            return "zeros";
        case EnvPreset::bell:
            return "bell";
        case EnvPreset::custom:
            break;
    }
    std::string out = "custom:";
    for (std::size_t i = 0; i < env.amplitudes.size(); ++i) {
        if (i) out += ',';
        out += format_double(env.amplitudes[i].real());
        if (env.amplitudes[i].imag() != 0.0) {
            out += ':';
            out += format_double(env.amplitudes[i].imag());
        }
    }
    return out;
}

SequenceSpec parse_sequence(std::string_view text, SequenceSpec base) {
    text = trim(text);
    if (text == "random") {
        base.kind = SequenceKind::random;
        base.indices.clear();
        return base;
    }
    if (text == "periodic") {
        base.kind = SequenceKind::periodic;
        base.indices.clear();
        return base;
    }
    constexpr std::string_view prefix = "explicit:";
    if (text.substr(0, prefix.size()) != prefix) {
        throw ConfigError("unknown sequence '" + std::string(text) + "' (expected random, periodic or explicit:<list>)");
    }
    base.kind = SequenceKind::explicit_list;
    base.indices.clear();
    const std::string_view list = trim(text.substr(prefix.size()));
    if (!list.empty()) {
        for (std::string_view entry : split(list, ',')) base.indices.push_back(parse_index(entry));
    }
    return base;
}

std::string_view to_string(Record record) {
    switch (record) {
        case Record::bloch:
            return "bloch";
        case Record::avg_deviation:
            return "avg_deviation";
        case Record::tangles:
            return "tangles";
        case Record::correlations:
            return "correlations";
        case Record::residuals:
            break;
    }
    return "residuals";
}

Record parse_record(std::string_view text) {
    text = trim(text);
    for (Record r : {Record::bloch, Record::avg_deviation, Record::tangles, Record::correlations, Record::residuals}) {
        if (text == to_string(r)) return r;
    }
    throw ConfigError("unknown record family '" + std::string(text) + "'");
}

bool RunConfig::records(Record r) const { return std::find(record.begin(), record.end(), r) != record.end(); }

RunConfig default_config() {
    RunConfig config;
    config.eta = std::numbers::pi / 10.0;
    config.theta = 2.0 * std::numbers::pi / 5.0;
    return config;
}

RunConfig resolve(RunConfig config) {
    if (!std::isfinite(config.eta) || !std::isfinite(config.theta) || !std::isfinite(config.phi)) {
        throw ConfigError("angles must be finite");
    }
    if (config.n_env == 0 || config.n_env + 1 > kMaxQubits) {
        throw ConfigError("n_env must be in 1.." + std::to_string(kMaxQubits - 1));
    }
    if (config.env_preset.preset == EnvPreset::bell && config.n_env != 2) {
        throw ConfigError("the bell environment requires n_env = 2");
    }
    if (config.env_preset.preset == EnvPreset::custom &&
        config.env_preset.amplitudes.size() != (std::size_t{1} << config.n_env)) {
        throw ConfigError("custom environment needs 2^n_env = " + std::to_string(std::size_t{1} << config.n_env) +
                          " amplitudes, got " + std::to_string(config.env_preset.amplitudes.size()));
    }
    if (config.every == 0) {
        throw ConfigError("every must be at least 1");
    }
    std::sort(config.record.begin(), config.record.end());
    config.record.erase(std::unique(config.record.begin(), config.record.end()), config.record.end());

    const bool explicit_seq = config.sequence.kind == SequenceKind::explicit_list;
    if (explicit_seq) {
        for (std::uint32_t index : config.sequence.indices) {
            if (index < 1 || index > config.n_env) {
                throw ConfigError("explicit sequence index " + std::to_string(index) + " outside 1.." +
                                  std::to_string(config.n_env));
            }
        }
    } else {
        config.sequence.indices.clear();
    }
    if (!config.steps) {
        if (explicit_seq) {
            config.steps = config.sequence.indices.size();
        } else if (config.records(Record::correlations)) {
            config.steps = config.correlations.samples + config.correlations.max_lag;
        } else {
            config.steps = kDefaultSteps;
        }
    }
    if (explicit_seq && *config.steps != config.sequence.indices.size()) {
        throw ConfigError("steps = " + std::to_string(*config.steps) + " but the explicit sequence has " +
                          std::to_string(config.sequence.indices.size()) + " entries");
    }
    if (config.records(Record::correlations) &&
        *config.steps < config.correlations.samples + config.correlations.max_lag) {
        throw ConfigError("correlations need steps >= samples + max_lag = " +
                          std::to_string(config.correlations.samples + config.correlations.max_lag));
    }
    if (config.records(Record::tangles) && config.n_env != 2) {
        throw ConfigError("tangle recording is defined for n_env = 2 (three qubits)");
    }
    if (config.records(Record::residuals) && config.evolution == Evolution::density) {
        throw ConfigError("subspace residuals need state-vector evolution");
    }
    if (config.output.empty()) {
        throw ConfigError("output path is empty");
    }
    return config;
}

namespace {

json to_json_value(const RunConfig &c) {
    json seq = {{"kind", std::string(to_string(c.sequence.kind))}};
    if (c.sequence.kind == SequenceKind::random) seq["seed"] = c.sequence.seed;
    if (c.sequence.kind == SequenceKind::explicit_list) seq["indices"] = c.sequence.indices;
    json record = json::array();
    for (Record r : c.record) record.push_back(std::string(to_string(r)));
    json j = {
        {"eta", c.eta},
        {"theta", c.theta},
        {"phi", c.phi},
        {"n_env", c.n_env},
        {"env_preset", format_environment(c.env_preset)},
        {"sequence", seq},
        {"record", record},
        {"correlations", {{"samples", c.correlations.samples}, {"max_lag", c.correlations.max_lag}}},
        {"every", c.every},
        {"output", c.output.generic_string()},
        {"emit_metadata", c.emit_metadata},
        {"evolution", c.evolution == Evolution::density ? "density" : "state_vector"},
        {"slope_window", {{"lo", c.slope_window.lo}, {"hi", c.slope_window.hi}}},
    };
    j["steps"] = c.steps ? json(*c.steps) : json(nullptr);
    return j;
}

double angle_from_json(const json &v, std::string_view name) {
    if (v.is_string()) return parse_angle(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
    throw ConfigError(std::string(name) + " must be a number or an angle expression");
}

template <class Fn>
void for_fields(const json &obj, std::string_view where, std::initializer_list<std::string_view> allowed, Fn &&fn) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + " must be a JSON object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown field '" + key + "' in " + std::string(where));
        }
        fn(key, value);
    }
}

RunConfig from_json_value(const json &j) {
    RunConfig c = default_config();
    for_fields(j, "config",
               {"eta", "theta", "phi", "n_env", "env_preset", "sequence", "steps", "record", "correlations", "every",
                "output", "emit_metadata", "evolution", "slope_window"},
               [&](const std::string &key, const json &v) {
                   if (key == "eta") {
                       c.eta = angle_from_json(v, key);
                   } else if (key == "theta") {
                       c.theta = angle_from_json(v, key);
                   } else if (key == "phi") {
                       c.phi = angle_from_json(v, key);
                   } else if (key == "n_env") {
                       c.n_env = v.get<std::size_t>();
                   } else if (key == "env_preset") {
                       c.env_preset = parse_environment(v.get<std::string>());
                   } else if (key == "sequence") {
                       SequenceSpec seq;
                       for_fields(v, "sequence", {"kind", "seed", "indices"},
                                  [&](const std::string &k, const json &sv) {
                                      if (k == "kind") {
                                          seq = parse_sequence(sv.get<std::string>() == "explicit"
                                                                   ? std::string("explicit:")
                                                                   : sv.get<std::string>(),
                                                               seq);
                                      } else if (k == "seed") {
                                          seq.seed = sv.get<std::uint64_t>();
                                      }
                                  });
                       if (v.contains("indices")) seq.indices = v.at("indices").get<std::vector<std::uint32_t>>();
                       c.sequence = seq;
                   } else if (key == "steps") {
                       c.steps = v.is_null() ? std::nullopt : std::optional<std::size_t>(v.get<std::size_t>());
                   } else if (key == "record") {
                       c.record.clear();
                       for (const auto &r : v) c.record.push_back(parse_record(r.get<std::string>()));
                   } else if (key == "correlations") {
                       for_fields(v, "correlations", {"samples", "max_lag"},
                                  [&](const std::string &k, const json &cv) {
                                      (k == "samples" ? c.correlations.samples : c.correlations.max_lag) =
                                          cv.get<std::size_t>();
                                  });
                   } else if (key == "every") {
                       c.every = v.get<std::size_t>();
                   } else if (key == "output") {
                       c.output = v.get<std::string>();
                   } else if (key == "emit_metadata") {
                       c.emit_metadata = v.get<bool>();
                   } else if (key == "evolution") {
                       const auto e = v.get<std::string>();
                       if (e == "state_vector") {
                           c.evolution = Evolution::state_vector;
                       } else if (e == "density") {
                           c.evolution = Evolution::density;
                       } else {
                           throw ConfigError("evolution must be state_vector or density");
                       }
                   } else if (key == "slope_window") {
                       for_fields(v, "slope_window", {"lo", "hi"}, [&](const std::string &k, const json &wv) {
                           (k == "lo" ? c.slope_window.lo : c.slope_window.hi) = wv.get<double>();
                       });
                   }
               });
    return c;
}

}  // namespace

std::string to_json(const RunConfig &config) { return to_json_value(config).dump(2); }

RunConfig config_from_json(std::string_view text) {
    try {
        return from_json_value(json::parse(text));
    } catch (const json::exception &e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
}

PureState initial_state(const RunConfig &config) {
    const PureState system = single_qubit_from_angles(config.theta, config.phi);
    switch (config.env_preset.preset) {
        case EnvPreset::zeros:
            return tensor(system, PureState::basis(config.n_env, 0));
        case EnvPreset::bell:
            if (config.n_env != 2) throw ConfigError("the bell environment requires n_env = 2");
            return tensor(system, bell_pair());
        case EnvPreset::custom:
            break;
    }
    const auto &amps = config.env_preset.amplitudes;
    if (amps.size() != (std::size_t{1} << config.n_env)) {
        throw ConfigError("custom environment has the wrong number of amplitudes");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
    try {
        return tensor(system, PureState::normalized(config.n_env, std::move(v)));
    } catch (const ArgumentError &e) {
        throw ConfigError(std::string("custom environment: ") + e.what());
    }
}

CollisionSequence build_sequence(const RunConfig &config) {
    const std::size_t steps = config.steps.value_or(kDefaultSteps);
    switch (config.sequence.kind) {
        case SequenceKind::random:
            return sequence_random(steps, config.n_env, config.sequence.seed);
        case SequenceKind::periodic:
            return sequence_periodic(steps, config.n_env);
        case SequenceKind::explicit_list:
            break;
    }
    try {
        return sequence_explicit(config.sequence.indices, config.n_env);
    } catch (const ArgumentError &e) {
        throw ConfigError(e.what());
    }
}

namespace {

std::string qubit_columns_prefix(const std::string &prefix, std::size_t q, char axis) {
    return prefix + std::to_string(q) + axis;
}

std::vector<std::string> vector_header(std::string_view key, const std::string &prefix, std::size_t n_qubits) {
    std::vector<std::string> header{std::string(key)};
    for (std::size_t q = 0; q < n_qubits; ++q) {
        for (char axis : {'x', 'y', 'z'}) header.push_back(qubit_columns_prefix(prefix, q, axis));
    }
    return header;
}

// Everything a run observes along its trajectory, streamed step by step.
class Recorder {
   public:
    Recorder(const RunConfig &config, const PureState &initial) : config_(config) {
        n_qubits_ = initial.n_qubits();
        steps_ = *config.steps;
        initial_total_ = total_bloch_vector(initial);
        reference_ = initial_total_ * (1.0 / static_cast<double>(n_qubits_));
        means_.resize(n_qubits_);
        bloch_.resize(n_qubits_);
        row_.reserve(3 * n_qubits_);

        const double hi = config.slope_window.hi > 0.0 ? config.slope_window.hi : static_cast<double>(steps_);
        slope_window_ = {config.slope_window.lo, hi};
        for (std::size_t t : log_spaced_times(steps_, kSlopePointsPerDecade)) {
            if (static_cast<double>(t) >= slope_window_.lo && static_cast<double>(t) <= slope_window_.hi) {
                checkpoints_.push_back(t);
            }
        }
        checkpoint_values_.assign(n_qubits_, {});

        std::error_code ec;
        std::filesystem::create_directories(config.output, ec);
        if (ec) {
            throw IoError("cannot create output directory " + config.output.string() + ": " + ec.message());
        }
        if (config.records(Record::bloch)) {
            bloch_csv_.emplace(config.output / "bloch.csv", vector_header("t", "b", n_qubits_));
        }
        if (config.records(Record::avg_deviation)) {
            avg_csv_.emplace(config.output / "avg_deviation.csv", vector_header("t", "avg_d", n_qubits_));
        }
        if (config.records(Record::tangles)) {
            tangle_csv_.emplace(config.output / "tangles.csv",
                                std::vector<std::string>{"t", "tau01", "tau02", "tau12", "tau012", "avg_tau01",
                                                         "avg_tau02", "avg_tau12", "avg_tau012"});
        }
        if (config.records(Record::residuals)) {
            residual_csv_.emplace(config.output / "residuals.csv",
                                  std::vector<std::string>{"t", "w_residual", "ghz_residual", "weight_drift"});
            initial_weights_ = hamming_weight_distribution(initial);
            if (config.env_preset.preset == EnvPreset::zeros && n_qubits_ >= 3) {
                try {
                    w_projector_.emplace(n_qubits_, single_qubit_from_angles(config.theta, config.phi),
                                         PureState::basis(1, 0));
                } catch (const DegenerateSpanError &) {
                    // System starts in |0>: the W span is undefined and the column is NaN.
                }
            }
        }
        if (config.records(Record::correlations)) {
            correlation_length_ = config.correlations.samples + config.correlations.max_lag + 1;
            deviations_.assign(3 * n_qubits_, {});
            for (auto &d : deviations_) d.reserve(correlation_length_);
        }
    }

    template <class State>
    void observe(std::size_t t, const State &state) {
        Vec3 total;
        for (std::size_t q = 0; q < n_qubits_; ++q) {
            bloch_[q] = bloch_vector(state, q);
            total += bloch_[q].vec();
            means_[q].add(bloch_[q].vec() - reference_);
        }
        max_drift_ = std::max(max_drift_, (total - initial_total_).max_abs());

        if (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == t) {
            for (std::size_t q = 0; q < n_qubits_; ++q) {
                checkpoint_values_[q].push_back(std::abs(means_[q].mean().z));
            }
            ++next_checkpoint_;
        }
        if (t < correlation_length_) {
            for (std::size_t q = 0; q < n_qubits_; ++q) {
                const Vec3 d = bloch_[q].vec() - reference_;
                deviations_[3 * q].push_back(d.x);
                deviations_[3 * q + 1].push_back(d.y);
                deviations_[3 * q + 2].push_back(d.z);
            }
        }
        const bool emit = t % config_.every == 0;
        if (tangle_csv_) {
            const TangleReport report = tangle_report(state);
            tangles_.add(report);
            if (emit) {
                const TangleReport avg = tangles_.mean();
                const double nan = std::numeric_limits<double>::quiet_NaN();
                const double values[] = {report.tau_01, report.tau_02,     report.tau_12,
                                         report.tau_012.value_or(nan),     avg.tau_01,
                                         avg.tau_02,    avg.tau_12,        avg.tau_012.value_or(nan)};
                tangle_csv_->row(t, values);
            }
        }
        if constexpr (std::is_same_v<State, PureState>) {
            if (residual_csv_ && emit) {
                const double w = w_projector_ ? w_projector_->residual(state) : std::numeric_limits<double>::quiet_NaN();
                const std::vector<double> weights = hamming_weight_distribution(state);
                double drift = 0.0;
                for (std::size_t k = 0; k < weights.size(); ++k) {
                    drift = std::max(drift, std::abs(weights[k] - initial_weights_[k]));
                }
                const double values[] = {w, ghz_span_residual(state), drift};
                residual_csv_->row(t, values);
            }
        }
        if (!emit) return;
        if (bloch_csv_) {
            row_.clear();
            for (const auto &b : bloch_) row_.insert(row_.end(), {b.x, b.y, b.z});
            bloch_csv_->row(t, row_);
        }
        if (avg_csv_) {
            row_.clear();
            for (const auto &m : means_) row_.insert(row_.end(), {m.mean().x, m.mean().y, m.mean().z});
            avg_csv_->row(t, row_);
        }
    }

    void finish(RunResult &result) {
        if (config_.records(Record::correlations)) {
            const auto &spec = config_.correlations;
            CsvWriter csv(config_.output / "correlations.csv", vector_header("lag", "C", n_qubits_));
            std::vector<std::vector<double>> columns;
            columns.reserve(deviations_.size());
            for (const auto &d : deviations_) columns.push_back(self_correlation(d, spec.samples, spec.max_lag));
            std::vector<double> row(columns.size());
            for (std::size_t lag = 0; lag <= spec.max_lag; ++lag) {
                for (std::size_t k = 0; k < columns.size(); ++k) row[k] = columns[k][lag];
                csv.row(lag, row);
            }
            csv.close();
            result.files.push_back(csv.path());
        }
        for (auto *csv : {&bloch_csv_, &avg_csv_, &tangle_csv_, &residual_csv_}) {
            if (*csv) {
                (*csv)->close();
                result.files.push_back((*csv)->path());
            }
        }
        result.max_total_bloch_drift = max_drift_;
        result.slopes.assign(n_qubits_, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t q = 0; q < n_qubits_; ++q) {
            const auto &ys = checkpoint_values_[q];
            if (ys.size() < 10 || std::any_of(ys.begin(), ys.end(), [](double y) { return !(y > 0.0); })) continue;
            std::vector<double> xs(checkpoints_.begin(), checkpoints_.begin() + static_cast<std::ptrdiff_t>(ys.size()));
            result.slopes[q] = loglog_slope(xs, ys, slope_window_);
        }
    }

   private:
    const RunConfig &config_;
    std::size_t n_qubits_ = 0;
    std::size_t steps_ = 0;
    Vec3 initial_total_;
    Vec3 reference_;
    std::vector<BlochVector> bloch_;
    std::vector<RunningMean<Vec3>> means_;
    std::vector<double> row_;
    double max_drift_ = 0.0;

    FitWindow slope_window_;
    std::vector<std::size_t> checkpoints_;
    std::size_t next_checkpoint_ = 0;
    std::vector<std::vector<double>> checkpoint_values_;

    std::size_t correlation_length_ = 0;
    std::vector<std::vector<double>> deviations_;

    RunningTangles tangles_;
    std::vector<double> initial_weights_;
    std::optional<WSpanProjector> w_projector_;

    std::optional<CsvWriter> bloch_csv_;
    std::optional<CsvWriter> avg_csv_;
    std::optional<CsvWriter> tangle_csv_;
    std::optional<CsvWriter> residual_csv_;
};

json slopes_json(const std::vector<double> &slopes) {
    json out = json::object();
    for (std::size_t q = 0; q < slopes.size(); ++q) {
        out["b" + std::to_string(q) + "z"] = std::isfinite(slopes[q]) ? json(slopes[q]) : json(nullptr);
    }
    return out;
}

}  // namespace

RunResult run(const RunConfig &raw) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig config = resolve(raw);
    const PureState initial = initial_state(config);
    CollisionSequence sequence = build_sequence(config);
    const CollisionParams params{config.eta, config.n_env};

    RunResult result;
    Recorder recorder(config, initial);
    if (config.evolution == Evolution::density) {
        DensityTrajectory trajectory = evolve_density(to_density(initial), params, std::move(sequence));
        trajectory.for_each([&](std::size_t t, const DensityOperator &rho) { recorder.observe(t, rho); });
    } else {
        Trajectory trajectory = evolve(initial, params, std::move(sequence));
        trajectory.for_each([&](std::size_t t, const PureState &psi) { recorder.observe(t, psi); });
    }
    recorder.finish(result);
    result.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (config.emit_metadata) {
        json files = json::array();
        for (const auto &f : result.files) files.push_back(f.filename().generic_string());
        json meta = {
            {"tool", "collide"},
            {"version", std::string(version())},
            {"config", to_json_value(config)},
            {"prng", std::string(kPrngName)},
            {"seed", config.sequence.kind == SequenceKind::random ? json(config.sequence.seed) : json(nullptr)},
            {"duration_seconds", result.duration_seconds},
            {"conservation", {{"max_abs_total_bloch_drift", result.max_total_bloch_drift}}},
            {"slopes", slopes_json(result.slopes)},
            {"outputs", files},
        };
        const auto path = config.output / "metadata.json";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << meta.dump(2) << '\n';
        out.close();
        if (!out) {
            throw IoError("cannot write " + path.string());
        }
        result.files.push_back(path);
    }
    return result;
}

SweepResult sweep(const RunConfig &base, std::span<const std::uint64_t> seeds, unsigned threads) {
    if (seeds.empty()) {
        throw ConfigError("sweep needs at least one seed");
    }
    if (base.sequence.kind != SequenceKind::random) {
        throw ConfigError("sweep varies the seed of a random sequence");
    }
    const RunConfig resolved = resolve(base);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    SweepResult out;
    out.seeds.assign(seeds.begin(), seeds.end());
    out.slopes.resize(seeds.size());

    auto run_seed = [&](std::size_t k) {
        RunConfig config = resolved;
        config.sequence.seed = seeds[k];
        config.output = resolved.output / ("seed-" + std::to_string(seeds[k]));
        return run(config).slopes;
    };
    for (std::size_t begin = 0; begin < seeds.size(); begin += threads) {
        const std::size_t end = std::min(seeds.size(), begin + threads);
        std::vector<std::future<std::vector<double>>> batch;
        for (std::size_t k = begin; k < end; ++k) batch.push_back(std::async(std::launch::async, run_seed, k));
        for (std::size_t k = begin; k < end; ++k) out.slopes[k] = batch[k - begin].get();
    }

    const std::size_t n_qubits = resolved.n_env + 1;
    out.mean.assign(n_qubits, 0.0);
    out.stddev.assign(n_qubits, 0.0);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        RunningMean<double> mean;
        for (const auto &s : out.slopes) mean.add(s[q]);
        out.mean[q] = mean.mean();
        double ss = 0.0;
        for (const auto &s : out.slopes) ss += (s[q] - mean.mean()) * (s[q] - mean.mean());
        out.stddev[q] = seeds.size() > 1 ? std::sqrt(ss / static_cast<double>(seeds.size() - 1)) : 0.0;
    }

    std::vector<std::string> header{"seed"};
    for (std::size_t q = 0; q < n_qubits; ++q) header.push_back("slope_b" + std::to_string(q) + "z");
    out.summary = resolved.output / "sweep.csv";
    CsvWriter csv(out.summary, header);
    for (std::size_t k = 0; k < seeds.size(); ++k) csv.row(std::to_string(seeds[k]), out.slopes[k]);
    if (seeds.size() > 1) {
        csv.row("mean", out.mean);
        csv.row("stddev", out.stddev);
    }
    csv.close();
    return out;
}

namespace {

struct RecipeSpec {
    std::string_view figure;
    std::size_t steps;
    std::vector<Record> record;
    std::size_t every;
};

RecipeSpec recipe_spec(std::string_view figure) {
    if (figure == "fig1") return {figure, 10'000, {Record::bloch}, 1};
    if (figure == "fig2") return {figure, 1'000'000, {Record::avg_deviation}, 100};
    if (figure == "fig3") return {figure, 1'001'000, {Record::correlations}, 1};
    return {figure, 1'000'000, {Record::tangles}, 100};
}

}  // namespace

std::vector<std::string> recipe_names() {
    std::vector<std::string> names;
    for (std::string fig : {"fig1", "fig2", "fig3", "fig4"}) {
        for (std::string seq : {"random", "periodic"}) {
            for (std::string env : {"separable", "bell"}) names.push_back(fig + "-" + seq + "-" + env);
        }
    }
    return names;
}

std::optional<RunConfig> recipe(std::string_view name) {
    std::vector<std::string_view> parts = split(name, '-');
    // figN-separable / figN-bell are shorthands for the random-sequence panels.
    if (parts.size() == 2) parts.insert(parts.begin() + 1, "random");
    if (parts.size() != 3) return std::nullopt;
    const std::string_view fig = parts[0];
    if (fig != "fig1" && fig != "fig2" && fig != "fig3" && fig != "fig4") return std::nullopt;
    if (parts[1] != "random" && parts[1] != "periodic") return std::nullopt;
    if (parts[2] != "separable" && parts[2] != "bell") return std::nullopt;

    const RecipeSpec spec = recipe_spec(fig);
    RunConfig config = default_config();
    config.sequence.kind = parts[1] == "random" ? SequenceKind::random : SequenceKind::periodic;
    config.sequence.seed = 1;
    config.env_preset = {parts[2] == "bell" ? EnvPreset::bell : EnvPreset::zeros, {}};
    config.steps = spec.steps;
    config.record = spec.record;
    config.every = spec.every;
    config.correlations = {1'000'000, 1'000};
    config.output = std::filesystem::path("out") /
                    (std::string(parts[0]) + "-" + std::string(parts[1]) + "-" + std::string(parts[2]));
    return config;
}

}  // namespace collide
