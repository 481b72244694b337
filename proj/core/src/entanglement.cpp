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

#include "collide/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "collide/errors.hpp"

namespace collide {

namespace {

constexpr double kRankFloor = 16 * std::numeric_limits<double>::epsilon();
constexpr double kRootAgreement = 1e-6;
constexpr double kThreeTangleFloor = -1e-9;
constexpr double kParallelThreshold = 1e-8;

// sigma_y (x) sigma_y in the computational basis.
const Eigen::Matrix4cd &spin_flip() {
    static const Eigen::Matrix4cd yy = [] {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return yy;
}

double one_qubit_tangle(const DensityOperator &rho_j) {
    const double det = (rho_j(0, 0) * rho_j(1, 1) - rho_j(0, 1) * rho_j(1, 0)).real();
    return std::clamp(4.0 * det, 0.0, 1.0);
}

void check_three_qubits(std::size_t n_qubits) {
    if (n_qubits != 3) {
        throw ArgumentError("expected a three-qubit register, got " + std::to_string(n_qubits) + " qubits");
    }
}

// Squared concurrence from any ensemble rho = sum_r |v_r><v_r| (columns of v):
// the alphas are the singular values of the complex symmetric v^T (sy x sy) v.
double tangle_from_ensemble(const Eigen::Matrix<Complex, 4, Eigen::Dynamic> &v) {
    if (v.cols() == 0) return 0.0;
    const Eigen::MatrixXcd t = v.transpose() * spin_flip() * v;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    const auto &alpha = svd.singularValues();  // non-increasing
    double concurrence = alpha[0];
    for (Eigen::Index i = 1; i < alpha.size(); ++i) concurrence -= alpha[i];
    concurrence = std::max(0.0, concurrence);
    return std::min(concurrence * concurrence, 1.0);
}

}  // namespace

double tangle(const DensityOperator &rho) {
    if (rho.n_qubits() != 2) {
        throw ArgumentError("tangle needs a two-qubit density operator");
    }
    if (rho.hermiticity_error() > kDefaultTolerance || std::abs(rho.trace() - 1.0) > kDefaultTolerance) {
        throw ArgumentError("tangle: density operator is not Hermitian with unit trace");
    }
    const Eigen::Matrix4cd m = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(m);
    const double top = eig.eigenvalues().maxCoeff();

    // Eigenvalues at the solver's noise floor are zero; their square roots
    // would otherwise leak ~1e-8 into the alphas.
    const double floor = kRankFloor * std::max(top, 0.0);
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> v(4, 0);
    for (int i = 0; i < 4; ++i) {
        const double p = eig.eigenvalues()[i];
        if (p <= floor) continue;
        v.conservativeResize(Eigen::NoChange, v.cols() + 1);
        v.col(v.cols() - 1) = std::sqrt(p) * eig.eigenvectors().col(i);
    }
    return tangle_from_ensemble(v);
}

double pair_tangle(const PureState &state, std::size_t a, std::size_t b) {
    const std::size_t n = state.n_qubits();
    if (n < 2 || a >= n || b >= n || a == b) {
        throw ArgumentError("pair_tangle needs two distinct qubits of the register");
    }
    const std::size_t ma = qubit_mask(n, a);
    const std::size_t mb = qubit_mask(n, b);
    const auto k = static_cast<Eigen::Index>(state.dimension() / 4);

    // Column r holds the pair amplitudes (00, 01, 10, 11) at the r-th configuration of the other qubits.
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> v(4, k);
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (i & (ma | mb)) continue;
        v(0, col) = state[i];
        v(1, col) = state[i | mb];
        v(2, col) = state[i | ma];
        v(3, col) = state[i | ma | mb];
        ++col;
    }
    return tangle_from_ensemble(v);
}

double tangle_pure_cut(const PureState &state, std::size_t qubit) {
    const std::size_t keep[] = {qubit};
    return one_qubit_tangle(reduced_density(state, keep));
}

std::array<double, 3> three_tangle_by_root(const PureState &state) {
    check_three_qubits(state.n_qubits());
    const double t01 = pair_tangle(state, 0, 1);
    const double t02 = pair_tangle(state, 0, 2);
    const double t12 = pair_tangle(state, 1, 2);
    return {tangle_pure_cut(state, 0) - t01 - t02, tangle_pure_cut(state, 1) - t01 - t12,
            tangle_pure_cut(state, 2) - t02 - t12};
}

namespace {

double checked_three_tangle(const std::array<double, 3> &roots) {
    const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
    if (*hi - *lo > kRootAgreement) {
        throw NumericalError("three-tangle roots disagree by " + std::to_string(*hi - *lo));
    }
    if (roots[0] < kThreeTangleFloor) {
        throw NumericalError("three-tangle is negative (" + std::to_string(roots[0]) + ")");
    }
    return std::max(roots[0], 0.0);
}

}  // namespace

double three_tangle(const PureState &state) { return checked_three_tangle(three_tangle_by_root(state)); }

TangleReport tangle_report(const PureState &state) {
    check_three_qubits(state.n_qubits());
    TangleReport report;
    report.tau_01 = pair_tangle(state, 0, 1);
    report.tau_02 = pair_tangle(state, 0, 2);
    report.tau_12 = pair_tangle(state, 1, 2);
    report.tau_0_rest = tangle_pure_cut(state, 0);
    report.tau_1_rest = tangle_pure_cut(state, 1);
    report.tau_2_rest = tangle_pure_cut(state, 2);
    report.tau_012 = checked_three_tangle({*report.tau_0_rest - report.tau_01 - report.tau_02,
                                           *report.tau_1_rest - report.tau_01 - report.tau_12,
                                           *report.tau_2_rest - report.tau_02 - report.tau_12});
    return report;
}

TangleReport tangle_report(const DensityOperator &rho) {
    check_three_qubits(rho.n_qubits());
    TangleReport report;
    report.tau_01 = tangle(partial_trace(rho, {0, 1}));
    report.tau_02 = tangle(partial_trace(rho, {0, 2}));
    report.tau_12 = tangle(partial_trace(rho, {1, 2}));
    return report;
}

namespace {

void running_update(double &mean, double x, std::size_t count) { mean += (x - mean) / static_cast<double>(count); }

void running_update(std::optional<double> &mean, const std::optional<double> &x, std::size_t count) {
    if (!x) {
        mean.reset();
        return;
    }
    if (count == 1) {
        mean = *x;
    } else if (mean) {
        running_update(*mean, *x, count);
    }
}

}  // namespace

void RunningTangles::add(const TangleReport &r) {
    ++count_;
    running_update(mean_.tau_01, r.tau_01, count_);
    running_update(mean_.tau_02, r.tau_02, count_);
    running_update(mean_.tau_12, r.tau_12, count_);
    running_update(mean_.tau_0_rest, r.tau_0_rest, count_);
    running_update(mean_.tau_1_rest, r.tau_1_rest, count_);
    running_update(mean_.tau_2_rest, r.tau_2_rest, count_);
    running_update(mean_.tau_012, r.tau_012, count_);
}

TangleReport RunningTangles::mean() const { return mean_; }

namespace {

template <class Traj>
std::vector<TangleReport> averaged_tangles(Traj &trajectory) {
    std::vector<TangleReport> out;
    out.reserve(trajectory.length() - trajectory.step() + 1);
    RunningTangles running;
    trajectory.for_each([&](std::size_t, const auto &state) {
        running.add(tangle_report(state));
        out.push_back(running.mean());
    });
    return out;
}

}  // namespace

std::vector<TangleReport> time_averaged_tangles(Trajectory &trajectory) { return averaged_tangles(trajectory); }

std::vector<TangleReport> time_averaged_tangles(DensityTrajectory &trajectory) { return averaged_tangles(trajectory); }

WSpanProjector::WSpanProjector(std::size_t n_qubits, const PureState &psi, const PureState &phi, WSpanForm form)
    : n_qubits_(n_qubits) {
    if (n_qubits < 3 || n_qubits > kMaxQubits) {
        throw ArgumentError("W-span diagnostic needs between 3 and " + std::to_string(kMaxQubits) + " qubits");
    }
    if (psi.n_qubits() != 1 || phi.n_qubits() != 1) {
        throw ArgumentError("W-span diagnostic needs single-qubit psi and phi");
    }
    if (std::abs(phi.amplitudes().dot(psi.amplitudes())) > 1.0 - kParallelThreshold) {
        throw DegenerateSpanError("psi and phi are parallel; the W span collapses");
    }

    auto product = [&](std::size_t psi_position) {
        PureState v = psi_position == 0 ? psi : phi;
        for (std::size_t q = 1; q < n_qubits; ++q) v = tensor(v, q == psi_position ? psi : phi);
        return v.amplitudes();
    };
    std::vector<Eigen::VectorXcd> spanning;
    for (std::size_t q = 0; q < n_qubits; ++q) spanning.push_back(product(q));
    if (form == WSpanForm::with_ground) spanning.push_back(product(n_qubits));

    // Gram-Schmidt with one reorthogonalization pass.
    for (Eigen::VectorXcd v : spanning) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &e : basis_) v -= e * e.dot(v);
        }
        const double norm = v.norm();
        if (norm < 1e-12) {
            throw DegenerateSpanError("W-span vectors are linearly dependent");
        }
        basis_.push_back(v / norm);
    }
}

double WSpanProjector::residual(const PureState &state) const {
    if (state.n_qubits() != n_qubits_) {
        throw ArgumentError("state has " + std::to_string(state.n_qubits()) + " qubits, projector expects " +
                            std::to_string(n_qubits_));
    }
    Eigen::VectorXcd r = state.amplitudes();
    for (const auto &e : basis_) r -= e * e.dot(r);
    return std::min(r.norm(), 1.0);
}

double w_span_residual(const PureState &state, const PureState &psi, const PureState &phi, WSpanForm form) {
    return WSpanProjector(state.n_qubits(), psi, phi, form).residual(state);
}

double ghz_span_residual(const PureState &state) {
    double outside = 0.0;
    for (std::size_t i = 1; i + 1 < state.dimension(); ++i) outside += std::norm(state[i]);
    return std::min(std::sqrt(outside), 1.0);
}

std::vector<double> hamming_weight_distribution(const PureState &state) {
    std::vector<double> weights(state.n_qubits() + 1, 0.0);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        weights[static_cast<std::size_t>(std::popcount(i))] += std::norm(state[i]);
    }
    return weights;
}

double hamming_sector_residual(const PureState &state, std::size_t weight) {
    if (weight > state.n_qubits()) {
        throw ArgumentError("Hamming weight exceeds the number of qubits");
    }
    double outside = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (static_cast<std::size_t>(std::popcount(i)) != weight) outside += std::norm(state[i]);
    }
    return std::min(std::sqrt(outside), 1.0);
}

}  // namespace collide
