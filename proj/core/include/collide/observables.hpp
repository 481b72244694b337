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

// Bloch-vector time series, running averages of their deviation from the
// equipartition value B / (N + 1), finite-sample self-correlations, and the
// small fitting helpers used to characterize them.

#include <cstddef>
#include <span>
#include <vector>

#include "collide/collision.hpp"
#include "collide/qstate.hpp"

namespace collide {

struct BlochSeries {
    std::size_t qubit = 0;
    /// b_qubit(t) for t = 0..T
    std::vector<BlochVector> values;
    /// Total Bloch vector divided by the number of qubits.
    Vec3 reference;

    std::size_t size() const { return values.size(); }
    Vec3 deviation(std::size_t t) const { return values[t].vec() - reference; }
};

struct AveragedDeviation {
    std::size_t qubit = 0;
    /// <Delta b>(t): mean of b(t') - reference over t' = 0..t.
    std::vector<Vec3> values;
};

struct CorrelationFunction {
    Axis axis = Axis::z;
    std::size_t qubit = 0;
    /// Number of samples minus one in the estimator (T).
    std::size_t samples = 0;
    /// C(lag) for lag = 0..max_lag
    std::vector<double> values;
};

struct ExpDecayFit {
    double rate = 0.0;
    double r_squared = 0.0;
};

/// Closed lag or time window [lo, hi].
struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const FitWindow &, const FitWindow &) = default;
};

/// Numerically stable running mean.
template <class T>
class RunningMean {
   public:
    void add(const T &x) {
        ++count_;
        mean_ += (x - mean_) * (1.0 / static_cast<double>(count_));
    }
    const T &mean() const { return mean_; }
    std::size_t count() const { return count_; }

   private:
    T mean_{};
    std::size_t count_ = 0;
};

/// Equipartition reference B / n_qubits of a state.
Vec3 equipartition_reference(const PureState &state);
Vec3 equipartition_reference(const DensityOperator &rho);

/// Consumes the trajectory.
BlochSeries bloch_series(Trajectory &trajectory, std::size_t qubit);
BlochSeries bloch_series(DensityTrajectory &trajectory, std::size_t qubit);

/// One series per qubit from a single pass over the trajectory.
std::vector<BlochSeries> bloch_series_all(Trajectory &trajectory);

AveragedDeviation averaged_deviation(const BlochSeries &series);

/// C(lag) = 1/(T+1) sum_{t'=0}^{T} d(t') d(t' + lag), d = b_axis - reference_axis,
/// for lag = 0..max_lag. Needs at least T + max_lag + 1 samples; no wrap-around.
CorrelationFunction self_correlation(const BlochSeries &series, Axis axis, std::size_t samples, std::size_t max_lag);

/// The same estimator over a raw deviation series.
std::vector<double> self_correlation(std::span<const double> deviation, std::size_t samples, std::size_t max_lag);

/// Least-squares slope of log(ys) against log(xs) over points with xs in the
/// window. Needs >= 10 points in the window, all strictly positive.
double loglog_slope(std::span<const double> xs, std::span<const double> ys, FitWindow window);

/// Least-squares fit log(values) = c - rate * lag over lags in the window.
ExpDecayFit exp_decay_fit(std::span<const double> lags, std::span<const double> values, FitWindow window);

/// max |values[t]| over t >= t_min.
double oscillation_persistence(std::span<const double> values, std::size_t t_min);

/// Mean of |values[t]| over t >= t_min: the level a decayed correlation
/// fluctuates around.
double plateau_level(std::span<const double> values, std::size_t t_min);

/// Local maxima of |values| (lag 0 included): the envelope of a damped
/// oscillation, on which an exponential decay fit is well defined.
struct PeakEnvelope {
    std::vector<double> lags;
    std::vector<double> values;
};
PeakEnvelope peak_envelope(std::span<const double> values);

/// Lags from 0 up to (not including) the first lag where |values| drops to
/// `factor` times `plateau` or below.
FitWindow pre_plateau_window(std::span<const double> values, double plateau, double factor = 3.0);

/// Roughly `per_decade` logarithmically spaced integer times in [1, t_max], ascending and unique.
std::vector<std::size_t> log_spaced_times(std::size_t t_max, std::size_t per_decade);

}  // namespace collide
