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

#include "collide/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "collide/errors.hpp"

namespace collide {

namespace {

constexpr std::size_t kSpectrumCheckMaxDimension = 64;

std::size_t dimension_for(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw ArgumentError("a register needs at least one qubit");
    }
    if (n_qubits > kMaxQubits) {
        throw ArgumentError("register of " + std::to_string(n_qubits) + " qubits exceeds the maximum of " +
                            std::to_string(kMaxQubits));
    }
    return std::size_t{1} << n_qubits;
}

// Basis-index offsets contributed by every configuration of `qubits`, with
// qubits[0] as the most significant bit of the configuration counter.
std::vector<std::size_t> offsets_for(std::size_t n_qubits, std::span<const std::size_t> qubits) {
    const std::size_t k = qubits.size();
    std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
    for (std::size_t a = 0; a < offsets.size(); ++a) {
        std::size_t offset = 0;
        for (std::size_t p = 0; p < k; ++p) {
            if ((a >> (k - 1 - p)) & 1U) {
                offset |= qubit_mask(n_qubits, qubits[p]);
            }
        }
        offsets[a] = offset;
    }
    return offsets;
}

struct Split {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> rest;
};

Split split_offsets(std::size_t n_qubits, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw ArgumentError("partial trace needs at least one kept qubit");
    }
    std::vector<bool> seen(n_qubits, false);
    for (std::size_t q : keep) {
        if (q >= n_qubits) {
            throw ArgumentError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_qubits) +
                                " qubits");
        }
        if (seen[q]) {
            throw ArgumentError("qubit index " + std::to_string(q) + " listed twice");
        }
        seen[q] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (!seen[q]) traced.push_back(q);
    }
    return {offsets_for(n_qubits, keep), offsets_for(n_qubits, traced)};
}

void check_qubit(std::size_t n_qubits, std::size_t qubit) {
    if (qubit >= n_qubits) {
        throw ArgumentError("qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(n_qubits) +
                            " qubits");
    }
}

}  // namespace

PureState::PureState(std::size_t n_qubits, Eigen::VectorXcd amplitudes, double tolerance)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != dimension_for(n_qubits)) {
        throw ArgumentError("expected " + std::to_string(dimension_for(n_qubits)) + " amplitudes, got " +
                            std::to_string(amplitudes_.size()));
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > tolerance) {
        throw ArgumentError("state is not normalized (squared norm " + std::to_string(amplitudes_.squaredNorm()) + ")");
    }
}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
    const std::size_t dim = dimension_for(n_qubits);
    if (index >= dim) {
        throw ArgumentError("basis index out of range");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(n_qubits, std::move(amps));
}

PureState PureState::normalized(std::size_t n_qubits, Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ArgumentError("cannot normalize a zero or non-finite amplitude vector");
    }
    amplitudes /= norm;
    return PureState(n_qubits, std::move(amplitudes));
}

DensityOperator::DensityOperator(std::size_t n_qubits, Eigen::MatrixXcd matrix, double tolerance)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw ArgumentError("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!matrix_.allFinite()) {
        throw ArgumentError("density matrix has non-finite entries");
    }
    if (hermiticity_error() > tolerance) {
        throw ArgumentError("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > tolerance) {
        throw ArgumentError("density matrix trace is not 1");
    }
    if (static_cast<std::size_t>(dim) <= kSpectrumCheckMaxDimension) {
        const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -tolerance) {
            throw ArgumentError("density matrix has a negative eigenvalue");
        }
    }
}

DensityOperator::DensityOperator(Unchecked, std::size_t n_qubits, Eigen::MatrixXcd matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {}

DensityOperator DensityOperator::maximally_mixed(std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return DensityOperator(n_qubits, std::move(m));
}

double DensityOperator::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double Vec3::max_abs() const { return std::max({std::abs(x), std::abs(y), std::abs(z)}); }

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::x:
            return 'x';
        case Axis::y:
            return 'y';
        case Axis::z:
            break;
    }
    return 'z';
}

PureState single_qubit_from_angles(double theta, double phi) {
    Eigen::VectorXcd amps(2);
    amps[0] = std::cos(theta / 2.0);
    amps[1] = std::polar(std::sin(theta / 2.0), phi);
    return PureState(1, std::move(amps));
}

PureState tensor(const PureState &a, const PureState &b) {
    const std::size_t n = a.n_qubits() + b.n_qubits();
    if (n > kMaxQubits) {
        throw ArgumentError("tensor product of " + std::to_string(n) + " qubits exceeds the maximum of " +
                            std::to_string(kMaxQubits));
    }
    const auto db = static_cast<Eigen::Index>(b.dimension());
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(a.dimension()) * db);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dimension()); ++i) {
        amps.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
    }
    return PureState(n, std::move(amps));
}

PureState bell_pair() {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[0] = amps[3] = std::numbers::sqrt2 / 2.0;
    return PureState(2, std::move(amps));
}

PureState ghz_state(std::size_t n_qubits) {
    const std::size_t dim = dimension_for(n_qubits);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    amps[0] = amps[static_cast<Eigen::Index>(dim - 1)] = std::numbers::sqrt2 / 2.0;
    return PureState(n_qubits, std::move(amps));
}

PureState w_state(std::size_t n_qubits) {
    const std::size_t dim = dimension_for(n_qubits);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    const double c = 1.0 / std::sqrt(static_cast<double>(n_qubits));
    for (std::size_t q = 0; q < n_qubits; ++q) {
        amps[static_cast<Eigen::Index>(qubit_mask(n_qubits, q))] = c;
    }
    return PureState(n_qubits, std::move(amps));
}

DensityOperator to_density(const PureState &state) {
    Eigen::MatrixXcd m = state.amplitudes() * state.amplitudes().adjoint();
    return DensityOperator(DensityOperator::Unchecked{}, state.n_qubits(), std::move(m));
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> keep) {
    const Split split = split_offsets(rho.n_qubits(), keep);
    const auto k = static_cast<Eigen::Index>(split.kept.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
    const Eigen::MatrixXcd &m = rho.matrix();
    for (Eigen::Index b = 0; b < k; ++b) {
        for (Eigen::Index a = 0; a < k; ++a) {
            Complex sum = 0.0;
            for (std::size_t r : split.rest) {
                sum += m(static_cast<Eigen::Index>(split.kept[a] | r), static_cast<Eigen::Index>(split.kept[b] | r));
            }
            out(a, b) = sum;
        }
    }
    return DensityOperator(DensityOperator::Unchecked{}, keep.size(), std::move(out));
}

DensityOperator partial_trace(const DensityOperator &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityOperator reduced_density(const PureState &state, std::span<const std::size_t> keep) {
    const Split split = split_offsets(state.n_qubits(), keep);
    const auto k = static_cast<Eigen::Index>(split.kept.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
    const Eigen::VectorXcd &psi = state.amplitudes();
    for (std::size_t r : split.rest) {
        for (Eigen::Index b = 0; b < k; ++b) {
            const Complex cb = std::conj(psi[static_cast<Eigen::Index>(split.kept[b] | r)]);
            for (Eigen::Index a = 0; a < k; ++a) {
                out(a, b) += psi[static_cast<Eigen::Index>(split.kept[a] | r)] * cb;
            }
        }
    }
    return DensityOperator(DensityOperator::Unchecked{}, keep.size(), std::move(out));
}

DensityOperator reduced_density(const PureState &state, std::initializer_list<std::size_t> keep) {
    return reduced_density(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

BlochVector bloch_vector(const DensityOperator &rho) {
    if (rho.n_qubits() != 1) {
        throw ArgumentError("bloch_vector needs a single-qubit density operator");
    }
    const Complex off = rho(0, 1);
    return {2.0 * off.real(), -2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

BlochVector bloch_vector(const PureState &state, std::size_t qubit) {
    check_qubit(state.n_qubits(), qubit);
    const std::size_t mask = qubit_mask(state.n_qubits(), qubit);
    const Eigen::VectorXcd &psi = state.amplitudes();
    double p0 = 0.0;
    double p1 = 0.0;
    Complex off = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (i & mask) continue;
        const Complex a0 = psi[static_cast<Eigen::Index>(i)];
        const Complex a1 = psi[static_cast<Eigen::Index>(i | mask)];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        off += a0 * std::conj(a1);
    }
    return {2.0 * off.real(), -2.0 * off.imag(), p0 - p1};
}

BlochVector bloch_vector(const DensityOperator &rho, std::size_t qubit) {
    const std::size_t keep[] = {qubit};
    return bloch_vector(partial_trace(rho, keep));
}

Vec3 total_bloch_vector(const PureState &state) {
    Vec3 total;
    for (std::size_t q = 0; q < state.n_qubits(); ++q) total += bloch_vector(state, q).vec();
    return total;
}

Vec3 total_bloch_vector(const DensityOperator &rho) {
    Vec3 total;
    for (std::size_t q = 0; q < rho.n_qubits(); ++q) total += bloch_vector(rho, q).vec();
    return total;
}

}  // namespace collide
