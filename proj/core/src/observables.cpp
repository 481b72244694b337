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

#include "collide/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "collide/errors.hpp"

namespace collide {

Vec3 equipartition_reference(const PureState &state) {
    return total_bloch_vector(state) * (1.0 / static_cast<double>(state.n_qubits()));
}

Vec3 equipartition_reference(const DensityOperator &rho) {
    return total_bloch_vector(rho) * (1.0 / static_cast<double>(rho.n_qubits()));
}

namespace {

template <class Traj>
BlochSeries series_of(Traj &trajectory, std::size_t qubit) {
    if (qubit >= trajectory.state().n_qubits()) {
        throw ArgumentError("qubit index " + std::to_string(qubit) + " out of range");
    }
    BlochSeries series;
    series.qubit = qubit;
    series.reference = equipartition_reference(trajectory.state());
    series.values.reserve(trajectory.length() - trajectory.step() + 1);
    trajectory.for_each(
        [&](std::size_t, const auto &state) { series.values.push_back(bloch_vector(state, qubit)); });
    return series;
}

}  // namespace

BlochSeries bloch_series(Trajectory &trajectory, std::size_t qubit) { return series_of(trajectory, qubit); }

BlochSeries bloch_series(DensityTrajectory &trajectory, std::size_t qubit) { return series_of(trajectory, qubit); }

std::vector<BlochSeries> bloch_series_all(Trajectory &trajectory) {
    const std::size_t n = trajectory.state().n_qubits();
    const Vec3 reference = equipartition_reference(trajectory.state());
    std::vector<BlochSeries> all(n);
    for (std::size_t q = 0; q < n; ++q) {
        all[q].qubit = q;
        all[q].reference = reference;
        all[q].values.reserve(trajectory.length() - trajectory.step() + 1);
    }
    trajectory.for_each([&](std::size_t, const PureState &state) {
        for (std::size_t q = 0; q < n; ++q) all[q].values.push_back(bloch_vector(state, q));
    });
    return all;
}

AveragedDeviation averaged_deviation(const BlochSeries &series) {
    if (series.values.empty()) {
        throw ArgumentError("averaged_deviation needs a nonempty series");
    }
    AveragedDeviation out;
    out.qubit = series.qubit;
    out.values.reserve(series.size());
    RunningMean<Vec3> mean;
    for (std::size_t t = 0; t < series.size(); ++t) {
        mean.add(series.deviation(t));
        out.values.push_back(mean.mean());
    }
    return out;
}

std::vector<double> self_correlation(std::span<const double> deviation, std::size_t samples, std::size_t max_lag) {
    if (deviation.size() < samples + max_lag + 1) {
        throw ArgumentError("self_correlation needs " + std::to_string(samples + max_lag + 1) +
                            " samples, series has " + std::to_string(deviation.size()));
    }
    std::vector<double> acc(max_lag + 1, 0.0);
    const double *d = deviation.data();
    for (std::size_t t = 0; t <= samples; ++t) {
        const double head = d[t];
        const double *tail = d + t;
        for (std::size_t lag = 0; lag <= max_lag; ++lag) {
            acc[lag] += head * tail[lag];
        }
    }
    const double norm = 1.0 / static_cast<double>(samples + 1);
    for (double &c : acc) c *= norm;
    return acc;
}

CorrelationFunction self_correlation(const BlochSeries &series, Axis axis, std::size_t samples, std::size_t max_lag) {
    std::vector<double> deviation(series.size());
    const double ref = component(series.reference, axis);
    for (std::size_t t = 0; t < series.size(); ++t) {
        deviation[t] = component(series.values[t].vec(), axis) - ref;
    }
    return {axis, series.qubit, samples, self_correlation(deviation, samples, max_lag)};
}

namespace {

struct LineFit {
    double slope = 0.0;
    double r_squared = 1.0;
};

LineFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw ArgumentError("fit window contains a single abscissa");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    // A constant series is fit exactly by a flat line.
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace

double loglog_slope(std::span<const double> xs, std::span<const double> ys, FitWindow window) {
    if (xs.size() != ys.size()) {
        throw ArgumentError("loglog_slope: xs and ys differ in length");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < window.lo || xs[i] > window.hi) continue;
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw ArgumentError("loglog_slope: nonpositive value in fit window");
        }
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    if (lx.size() < 10) {
        throw ArgumentError("loglog_slope: fewer than 10 points in fit window");
    }
    return least_squares(lx, ly).slope;
}

ExpDecayFit exp_decay_fit(std::span<const double> lags, std::span<const double> values, FitWindow window) {
    if (lags.size() != values.size()) {
        throw ArgumentError("exp_decay_fit: lags and values differ in length");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (lags[i] < window.lo || lags[i] > window.hi) continue;
        if (!(values[i] > 0.0)) {
            throw ArgumentError("exp_decay_fit: nonpositive value in fit window");
        }
        x.push_back(lags[i]);
        y.push_back(std::log(values[i]));
    }
    if (x.size() < 3) {
        throw ArgumentError("exp_decay_fit: fewer than 3 points in fit window");
    }
    const LineFit fit = least_squares(x, y);
    return {-fit.slope, fit.r_squared};
}

double oscillation_persistence(std::span<const double> values, std::size_t t_min) {
    if (t_min >= values.size()) {
        throw ArgumentError("oscillation_persistence: t_min beyond series");
    }
    double peak = 0.0;
    for (std::size_t t = t_min; t < values.size(); ++t) peak = std::max(peak, std::abs(values[t]));
    return peak;
}

double plateau_level(std::span<const double> values, std::size_t t_min) {
    if (t_min >= values.size()) {
        throw ArgumentError("plateau_level: t_min beyond series");
    }
    double sum = 0.0;
    for (std::size_t t = t_min; t < values.size(); ++t) sum += std::abs(values[t]);
    return sum / static_cast<double>(values.size() - t_min);
}

PeakEnvelope peak_envelope(std::span<const double> values) {
    PeakEnvelope env;
    for (std::size_t t = 0; t < values.size(); ++t) {
        const double v = std::abs(values[t]);
        const bool left = t == 0 || v >= std::abs(values[t - 1]);
        const bool right = t + 1 == values.size() || v >= std::abs(values[t + 1]);
        if (t == 0 || (left && right)) {
            env.lags.push_back(static_cast<double>(t));
            env.values.push_back(v);
        }
    }
    return env;
}

FitWindow pre_plateau_window(std::span<const double> values, double plateau, double factor) {
    std::size_t end = values.size();
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (std::abs(values[t]) <= factor * plateau) {
            end = t;
            break;
        }
    }
    if (end == 0) {
        return {0.0, -1.0};
    }
    return {0.0, static_cast<double>(end - 1)};
}

std::vector<std::size_t> log_spaced_times(std::size_t t_max, std::size_t per_decade) {
    std::vector<std::size_t> times;
    if (t_max == 0 || per_decade == 0) return times;
    const double top = std::log10(static_cast<double>(t_max));
    const auto count = static_cast<std::size_t>(std::ceil(top * static_cast<double>(per_decade)));
    for (std::size_t k = 0; k <= count; ++k) {
        const double e = std::min(top, static_cast<double>(k) / static_cast<double>(per_decade));
        const auto t = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
        const std::size_t clamped = std::min(t, t_max);
        if (times.empty() || clamped > times.back()) times.push_back(clamped);
    }
    return times;
}

}  // namespace collide
