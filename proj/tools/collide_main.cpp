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

// collide: command-line runner for repeated partial-swap collision experiments.
//
//   collide run       --eta pi/10 --theta 2pi/5 --env bell --seq random --seed 7 --steps 100000 --out out/a
//   collide correlate --samples 1000000 --max-lag 1000 --out out/c
//   collide sweep     --seed-count 20 --steps 1000000 --record avg_deviation --every 1000 --out out/s
//   collide recipe fig4-bell

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collide/errors.hpp"
#include "collide/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::string> config;
    std::optional<std::string> eta;
    std::optional<std::string> theta;
    std::optional<std::string> phi;
    std::optional<std::size_t> n_env;
    std::optional<std::string> env;
    std::optional<std::string> seq;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<std::string> record;
    std::optional<std::size_t> every;
    std::optional<std::string> out;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> max_lag;
    std::optional<double> slope_lo;
    std::optional<double> slope_hi;
    bool density = false;
    bool no_metadata = false;
};

void add_common(CLI::App *app, Overrides &o) {
    app->add_option("--config", o.config, "JSON config file; flags override its values");
    app->add_option("--eta", o.eta, "collision angle, e.g. 0.314 or pi/10");
    app->add_option("--theta", o.theta, "polar angle of the initial system qubit");
    app->add_option("--phi", o.phi, "azimuthal angle of the initial system qubit");
    app->add_option("--n-env", o.n_env, "number of environment qubits");
    app->add_option("--env", o.env, "zeros | bell | custom:<a0>,<a1>,... (entries re or re:im)");
    app->add_option("--seq", o.seq, "random | periodic | explicit:<i1>,<i2>,...");
    app->add_option("--seed", o.seed, "seed of the random collision sequence");
    app->add_option("--steps", o.steps, "number of collisions");
    app->add_option("--record", o.record, "comma list of bloch,avg_deviation,tangles,correlations,residuals");
    app->add_option("--every", o.every, "write every k-th row (averages still use every step)");
    app->add_option("--out", o.out, "output directory");
    app->add_option("--samples", o.samples, "T of the correlation estimator");
    app->add_option("--max-lag", o.max_lag, "largest correlation lag");
    app->add_option("--slope-lo", o.slope_lo, "lower end of the log-log slope window");
    app->add_option("--slope-hi", o.slope_hi, "upper end of the log-log slope window (0: steps)");
    app->add_flag("--density", o.density, "evolve the density operator instead of the state vector");
    app->add_flag("--no-metadata", o.no_metadata, "skip metadata.json");
}

collide::RunConfig load_base(const Overrides &o, collide::RunConfig fallback) {
    if (!o.config) return fallback;
    std::ifstream in(*o.config);
    if (!in) {
        throw collide::ConfigError("cannot read config file " + *o.config);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return collide::config_from_json(text.str());
}

collide::RunConfig apply(const Overrides &o, collide::RunConfig c) {
    if (o.eta) c.eta = collide::parse_angle(*o.eta);
    if (o.theta) c.theta = collide::parse_angle(*o.theta);
    if (o.phi) c.phi = collide::parse_angle(*o.phi);
    if (o.n_env) c.n_env = *o.n_env;
    if (o.env) c.env_preset = collide::parse_environment(*o.env);
    if (o.seq) c.sequence = collide::parse_sequence(*o.seq, c.sequence);
    if (o.seed) c.sequence.seed = *o.seed;
    if (o.steps) c.steps = *o.steps;
    if (o.record) {
        c.record.clear();
        std::stringstream list(*o.record);
        for (std::string item; std::getline(list, item, ',');) c.record.push_back(collide::parse_record(item));
    }
    if (o.every) c.every = *o.every;
    if (o.out) c.output = *o.out;
    if (o.samples) c.correlations.samples = *o.samples;
    if (o.max_lag) c.correlations.max_lag = *o.max_lag;
    if (o.slope_lo) c.slope_window.lo = *o.slope_lo;
    if (o.slope_hi) c.slope_window.hi = *o.slope_hi;
    if (o.density) c.evolution = collide::Evolution::density;
    if (o.no_metadata) c.emit_metadata = false;
    return c;
}

void report(const collide::RunResult &result) {
    for (const auto &f : result.files) std::cout << "wrote " << f.string() << '\n';
    std::cout << "max |B(t) - B(0)| = " << result.max_total_bloch_drift << '\n';
    std::cout << "elapsed " << result.duration_seconds << " s\n";
}

std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        std::uint64_t value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw collide::ConfigError("cannot parse seed '" + item + "'");
        }
        seeds.push_back(value);
    }
    return seeds;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Repeated partial-swap collisions of a system qubit with a small qubit environment"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto *run_cmd = app.add_subcommand("run", "evolve one configuration and write CSV outputs");
    add_common(run_cmd, run_opts);

    Overrides corr_opts;
    auto *corr_cmd = app.add_subcommand("correlate", "self-correlation functions C_ik(lag)");
    add_common(corr_cmd, corr_opts);

    Overrides sweep_opts;
    std::optional<std::string> seed_list;
    std::optional<std::size_t> seed_count;
    unsigned threads = 0;
    auto *sweep_cmd = app.add_subcommand("sweep", "run one configuration over many seeds, aggregate slopes");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--seeds", seed_list, "explicit comma-separated seed list");
    sweep_cmd->add_option("--seed-count", seed_count, "derive this many seeds as substreams of --seed");
    sweep_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

    Overrides recipe_opts;
    std::string recipe_name;
    bool list_recipes = false;
    auto *recipe_cmd = app.add_subcommand("recipe", "run a built-in figure setup");
    add_common(recipe_cmd, recipe_opts);
    recipe_cmd->add_option("name", recipe_name, "recipe name, e.g. fig1-random-separable");
    recipe_cmd->add_flag("--list", list_recipes, "print the recipe names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            report(collide::run(apply(run_opts, load_base(run_opts, collide::default_config()))));
        } else if (corr_cmd->parsed()) {
            collide::RunConfig config = apply(corr_opts, load_base(corr_opts, collide::default_config()));
            if (!corr_opts.record) config.record = {collide::Record::correlations};
            if (!config.records(collide::Record::correlations)) config.record.push_back(collide::Record::correlations);
            report(collide::run(config));
        } else if (sweep_cmd->parsed()) {
            collide::RunConfig config = apply(sweep_opts, load_base(sweep_opts, collide::default_config()));
            std::vector<std::uint64_t> seeds;
            if (seed_list) seeds = parse_seed_list(*seed_list);
            if (seed_count) {
                if (seed_list) throw collide::ConfigError("use either --seeds or --seed-count");
                for (std::size_t k = 0; k < *seed_count; ++k) {
                    seeds.push_back(collide::stream_seed(config.sequence.seed, k));
                }
            }
            const auto result = collide::sweep(config, seeds, threads);
            for (std::size_t q = 0; q < result.mean.size(); ++q) {
                std::cout << "slope b" << q << "z: mean " << result.mean[q] << " stddev " << result.stddev[q] << '\n';
            }
            std::cout << "wrote " << result.summary.string() << '\n';
        } else if (recipe_cmd->parsed()) {
            if (list_recipes) {
                for (const auto &name : collide::recipe_names()) std::cout << name << '\n';
                return 0;
            }
            const auto base = collide::recipe(recipe_name);
            if (!base) {
                std::cerr << "unknown recipe '" << recipe_name << "' (see collide recipe --list)\n";
                return 2;
            }
            report(collide::run(apply(recipe_opts, load_base(recipe_opts, *base))));
        }
    } catch (const collide::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const collide::ArgumentError &e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const collide::IoError &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
