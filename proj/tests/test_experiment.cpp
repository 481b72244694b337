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

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "collide/errors.hpp"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

using namespace collide;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> lines_of(const fs::path &path) {
    std::vector<std::string> lines;
    std::istringstream in(slurp(path));
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::current_path() / "experiment-scratch" / name;
    fs::remove_all(dir);
    return dir;
}

RunConfig small_config(const std::string &name) {
    RunConfig c = default_config();
    c.steps = 200;
    c.output = scratch(name);
    return c;
}

}  // namespace

TEST(experiment, parse_angle_forms) {
    EXPECT_DOUBLE_EQ(parse_angle("pi/10"), std::numbers::pi / 10.0);
    EXPECT_DOUBLE_EQ(parse_angle("2pi/5"), 2.0 * std::numbers::pi / 5.0);
    EXPECT_DOUBLE_EQ(parse_angle("2*pi/5"), 2.0 * std::numbers::pi / 5.0);
    EXPECT_DOUBLE_EQ(parse_angle("-pi/4"), -std::numbers::pi / 4.0);
    EXPECT_DOUBLE_EQ(parse_angle("pi"), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    EXPECT_THROW(parse_angle("tau"), ConfigError);
    EXPECT_THROW(parse_angle("pi/0"), ConfigError);
}

TEST(experiment, environment_parsing) {
    EXPECT_EQ(parse_environment("zeros").preset, EnvPreset::zeros);
    EXPECT_EQ(parse_environment("bell").preset, EnvPreset::bell);
    const EnvironmentSpec custom = parse_environment("custom:1,0,0,0:1");
    ASSERT_EQ(custom.preset, EnvPreset::custom);
    ASSERT_EQ(custom.amplitudes.size(), 4u);
    EXPECT_EQ(custom.amplitudes[3], (Complex{0.0, 1.0}));
    EXPECT_EQ(parse_environment(format_environment(custom)), custom);
    EXPECT_THROW(parse_environment("thermal"), ConfigError);
    EXPECT_THROW(parse_environment("custom:1,x"), ConfigError);
}

TEST(experiment, sequence_parsing) {
    SequenceSpec base;
    base.seed = 9;
    const SequenceSpec random = parse_sequence("random", base);
    EXPECT_EQ(random.kind, SequenceKind::random);
    EXPECT_EQ(random.seed, 9u);
    EXPECT_EQ(parse_sequence("periodic").kind, SequenceKind::periodic);
    const SequenceSpec explicit_seq = parse_sequence("explicit:1,2,2");
    EXPECT_EQ(explicit_seq.kind, SequenceKind::explicit_list);
    EXPECT_EQ(explicit_seq.indices, (std::vector<std::uint32_t>{1, 2, 2}));
    EXPECT_THROW(parse_sequence("chaotic"), ConfigError);
    EXPECT_THROW(parse_sequence("explicit:1,a"), ConfigError);
}

TEST(experiment, record_names_round_trip) {
    for (Record r : {Record::bloch, Record::avg_deviation, Record::tangles, Record::correlations, Record::residuals}) {
        EXPECT_EQ(parse_record(to_string(r)), r);
    }
    EXPECT_THROW(parse_record("entropy"), ConfigError);
}

TEST(experiment, resolve_fills_steps) {
    RunConfig c = default_config();
    c.steps.reset();
    EXPECT_EQ(*resolve(c).steps, 10'000u);
    c.sequence = parse_sequence("explicit:1,2,1");
    EXPECT_EQ(*resolve(c).steps, 3u);
    c = default_config();
    c.steps.reset();
    c.record = {Record::correlations};
    c.correlations = {100, 10};
    EXPECT_EQ(*resolve(c).steps, 110u);
}

TEST(experiment, resolve_rejects_invalid_configs) {
    RunConfig c = default_config();
    c.env_preset = parse_environment("bell");
    c.n_env = 3;
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.env_preset = parse_environment("custom:1,0,0");
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.record = {Record::correlations};
    c.correlations = {100, 10};
    c.steps = 50;
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.sequence = parse_sequence("explicit:1,2");
    c.steps = 5;
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.sequence = parse_sequence("explicit:1,3");
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.n_env = 3;
    c.record = {Record::tangles};
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.every = 0;
    EXPECT_THROW(resolve(c), ConfigError);

    c = default_config();
    c.record = {Record::residuals};
    c.evolution = Evolution::density;
    EXPECT_THROW(resolve(c), ConfigError);
}

TEST(experiment, json_round_trip) {
    RunConfig c = resolve(default_config());
    c.record = {Record::bloch, Record::tangles};
    c.env_preset = parse_environment("custom:0.6,0,0,0:0.8");
    c.sequence.seed = 123;
    c.every = 7;
    EXPECT_EQ(config_from_json(to_json(c)), c);
    EXPECT_THROW(config_from_json(R"({"eta": 1.0, "colour": 3})"), ConfigError);
    EXPECT_THROW(config_from_json("not json"), ConfigError);
    const RunConfig angles = config_from_json(R"({"eta": "pi/10", "theta": "2pi/5"})");
    EXPECT_DOUBLE_EQ(angles.eta, std::numbers::pi / 10.0);
}

TEST(experiment, initial_state_presets) {
    RunConfig c = default_config();
    const PureState separable = initial_state(c);
    EXPECT_NEAR(bloch_vector(separable, 0).z, std::cos(c.theta), 1e-15);
    c.env_preset = parse_environment("bell");
    const PureState bell = initial_state(c);
    EXPECT_NEAR(bloch_vector(bell, 1).norm(), 0.0, 1e-15);
    c.env_preset = parse_environment("custom:2,0,0,0");
    EXPECT_NEAR(bloch_vector(initial_state(c), 1).z, 1.0, 1e-15);
}

TEST(experiment, run_writes_bloch_csv_with_contract_header) {
    RunConfig c = small_config("bloch");
    const RunResult result = run(c);
    const auto lines = lines_of(c.output / "bloch.csv");
    ASSERT_EQ(lines.size(), 202u);
    EXPECT_EQ(lines[0], "t,b0x,b0y,b0z,b1x,b1y,b1z,b2x,b2y,b2z");
    EXPECT_EQ(lines[1].substr(0, 2), "0,");
    EXPECT_EQ(lines[2].substr(0, 2), "1,");
    EXPECT_NE(lines[2].find(",0.37499999999999994,"), std::string::npos);
    EXPECT_LT(result.max_total_bloch_drift, 1e-12);
    EXPECT_TRUE(fs::exists(c.output / "metadata.json"));
    EXPECT_EQ(slurp(c.output / "bloch.csv").find('\r'), std::string::npos);
}

TEST(experiment, extended_header_for_more_environment_qubits) {
    RunConfig c = small_config("n4");
    c.n_env = 4;
    run(c);
    EXPECT_EQ(lines_of(c.output / "bloch.csv")[0],
              "t,b0x,b0y,b0z,b1x,b1y,b1z,b2x,b2y,b2z,b3x,b3y,b3z,b4x,b4y,b4z");
}

TEST(experiment, zero_steps_gives_single_row) {
    RunConfig c = small_config("zero");
    c.steps = 0;
    c.record = {Record::bloch, Record::avg_deviation, Record::tangles, Record::residuals};
    run(c);
    for (const char *file : {"bloch.csv", "avg_deviation.csv", "tangles.csv", "residuals.csv"}) {
        const auto lines = lines_of(c.output / file);
        ASSERT_EQ(lines.size(), 2u) << file;
        EXPECT_EQ(lines[1].substr(0, 2), "0,") << file;
    }
}

TEST(experiment, all_record_families_and_headers) {
    RunConfig c = small_config("families");
    c.record = {Record::bloch, Record::avg_deviation, Record::tangles, Record::residuals, Record::correlations};
    c.correlations = {150, 50};
    run(c);
    EXPECT_EQ(lines_of(c.output / "avg_deviation.csv")[0],
              "t,avg_d0x,avg_d0y,avg_d0z,avg_d1x,avg_d1y,avg_d1z,avg_d2x,avg_d2y,avg_d2z");
    EXPECT_EQ(lines_of(c.output / "tangles.csv")[0], "t,tau01,tau02,tau12,tau012,avg_tau01,avg_tau02,avg_tau12,avg_tau012");
    EXPECT_EQ(lines_of(c.output / "residuals.csv")[0], "t,w_residual,ghz_residual,weight_drift");
    const auto corr = lines_of(c.output / "correlations.csv");
    EXPECT_EQ(corr[0], "lag,C0x,C0y,C0z,C1x,C1y,C1z,C2x,C2y,C2z");
    EXPECT_EQ(corr.size(), 52u);
    EXPECT_EQ(lines_of(c.output / "tangles.csv").size(), 202u);
}

TEST(experiment, zero_coupling_gives_constant_correlations) {
    RunConfig c = small_config("eta0");
    c.eta = 0.0;
    c.record = {Record::correlations};
    c.correlations = {100, 20};
    c.steps.reset();
    run(c);
    const auto corr = lines_of(c.output / "correlations.csv");
    const std::string first = corr[1].substr(corr[1].find(','));
    for (std::size_t k = 2; k < corr.size(); ++k) EXPECT_EQ(corr[k].substr(corr[k].find(',')), first);
}

TEST(experiment, every_downsamples_rows) {
    RunConfig c = small_config("every");
    c.every = 50;
    c.record = {Record::bloch, Record::avg_deviation};
    run(c);
    const auto lines = lines_of(c.output / "avg_deviation.csv");
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_EQ(lines[5].substr(0, 4), "200,");

    RunConfig full = small_config("every-full");
    full.record = {Record::avg_deviation};
    run(full);
    EXPECT_EQ(lines_of(full.output / "avg_deviation.csv")[201], lines[5]);
}

TEST(experiment, repeat_runs_are_byte_identical) {
    RunConfig a = small_config("repeat-a");
    a.record = {Record::bloch, Record::tangles, Record::residuals};
    RunConfig b = a;
    b.output = scratch("repeat-b");
    run(a);
    run(b);
    for (const char *file : {"bloch.csv", "tangles.csv", "residuals.csv"}) {
        EXPECT_EQ(slurp(a.output / file), slurp(b.output / file)) << file;
    }
}

TEST(experiment, metadata_round_trips_config) {
    RunConfig c = small_config("meta");
    c.sequence.seed = 77;
    run(c);
    const auto meta = nlohmann::json::parse(slurp(c.output / "metadata.json"));
    EXPECT_EQ(meta.at("prng"), "mt19937_64");
    EXPECT_EQ(meta.at("seed"), 77);
    EXPECT_EQ(meta.at("tool"), "collide");
    EXPECT_TRUE(meta.at("conservation").contains("max_abs_total_bloch_drift"));
    EXPECT_EQ(config_from_json(meta.at("config").dump()), resolve(c));
}

TEST(experiment, no_metadata_flag) {
    RunConfig c = small_config("nometa");
    c.emit_metadata = false;
    run(c);
    EXPECT_FALSE(fs::exists(c.output / "metadata.json"));
}

TEST(experiment, density_evolution_matches_state_vector) {
    RunConfig a = small_config("dens-a");
    a.record = {Record::bloch};
    RunConfig b = a;
    b.output = scratch("dens-b");
    b.evolution = Evolution::density;
    run(a);
    run(b);
    const auto la = lines_of(a.output / "bloch.csv");
    const auto lb = lines_of(b.output / "bloch.csv");
    ASSERT_EQ(la.size(), lb.size());
    for (std::size_t k = 1; k < la.size(); k += 40) {
        std::istringstream sa(la[k]), sb(lb[k]);
        for (std::string xa, xb; std::getline(sa, xa, ',') && std::getline(sb, xb, ',');) {
            EXPECT_NEAR(std::stod(xa), std::stod(xb), 1e-10);
        }
    }
}

TEST(experiment, unwritable_output_is_io_error) {
    RunConfig c = small_config("io");
    fs::create_directories(c.output.parent_path());
    std::ofstream(c.output) << "a file, not a directory";
    c.output /= "nested";
    EXPECT_THROW(run(c), IoError);
}

TEST(experiment, sweep_single_seed) {
    RunConfig c = small_config("sweep1");
    c.steps = 2000;
    const std::vector<std::uint64_t> seeds{5};
    const SweepResult result = sweep(c, seeds, 1);
    ASSERT_EQ(result.slopes.size(), 1u);
    const auto lines = lines_of(result.summary);
    EXPECT_EQ(lines[0], "seed,slope_b0z,slope_b1z,slope_b2z");
    EXPECT_EQ(lines.size(), 2u);
    EXPECT_TRUE(fs::exists(c.output / "seed-5" / "bloch.csv"));
}

TEST(experiment, sweep_many_seeds) {
    RunConfig c = small_config("sweep20");
    c.steps = 1000;
    c.record = {Record::avg_deviation};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 20; ++k) seeds.push_back(stream_seed(3, k));
    const SweepResult result = sweep(c, seeds, 2);
    EXPECT_EQ(result.slopes.size(), 20u);
    const auto lines = lines_of(result.summary);
    ASSERT_EQ(lines.size(), 23u);
    EXPECT_EQ(lines[21].substr(0, 5), "mean,");
    EXPECT_EQ(lines[22].substr(0, 7), "stddev,");
    double sum = 0.0;
    for (const auto &s : result.slopes) sum += s[0];
    EXPECT_NEAR(result.mean[0], sum / 20.0, 1e-12);
}

TEST(experiment, sweep_rejects_bad_input) {
    RunConfig c = small_config("sweep-bad");
    EXPECT_THROW(sweep(c, std::vector<std::uint64_t>{}, 1), ConfigError);
    c.sequence = parse_sequence("periodic");
    EXPECT_THROW(sweep(c, std::vector<std::uint64_t>{1}, 1), ConfigError);
}

TEST(experiment, recipes) {
    const auto names = recipe_names();
    EXPECT_EQ(names.size(), 16u);
    for (const auto &name : names) {
        const auto r = recipe(name);
        ASSERT_TRUE(r.has_value()) << name;
        EXPECT_NO_THROW(resolve(*r)) << name;
        EXPECT_DOUBLE_EQ(r->eta, std::numbers::pi / 10.0);
        EXPECT_DOUBLE_EQ(r->theta, 2.0 * std::numbers::pi / 5.0);
    }
    const auto fig1 = recipe("fig1-random-separable");
    EXPECT_EQ(*resolve(*fig1).steps, 10'000u);
    EXPECT_EQ(fig1->env_preset.preset, EnvPreset::zeros);
    const auto fig4 = recipe("fig4-bell");
    ASSERT_TRUE(fig4.has_value());
    EXPECT_EQ(fig4->env_preset.preset, EnvPreset::bell);
    EXPECT_EQ(fig4->sequence.kind, SequenceKind::random);
    EXPECT_TRUE(fig4->records(Record::tangles));
    const auto fig3 = recipe("fig3-periodic-separable");
    EXPECT_EQ(fig3->correlations.samples, 1'000'000u);
    EXPECT_EQ(fig3->correlations.max_lag, 1'000u);
    EXPECT_FALSE(recipe("fig5-random-bell").has_value());
    EXPECT_FALSE(recipe("fig1-chaotic-bell").has_value());
}
