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

// Entanglement measures for the collision register: the two-qubit tangle
// (squared concurrence), the pure-state one-vs-rest tangle 4 det(rho_j),
// the three-tangle, and residual diagnostics for the subspaces the partial
// swap dynamics is confined to.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "collide/collision.hpp"
#include "collide/qstate.hpp"

namespace collide {

/// Tangles of a three-qubit register. The one-vs-rest tangles and the
/// three-tangle are only defined for pure states and are empty otherwise.
struct TangleReport {
    double tau_01 = 0.0;
    double tau_02 = 0.0;
    double tau_12 = 0.0;
    std::optional<double> tau_0_rest;
    std::optional<double> tau_1_rest;
    std::optional<double> tau_2_rest;
    std::optional<double> tau_012;
};

enum class SubspaceKind { w_span, ghz_span, hamming_sector };

struct SubspaceDiagnostic {
    SubspaceKind kind = SubspaceKind::w_span;
    /// Norm of the state component outside the subspace, in [0, 1].
    double residual = 0.0;
};

/// Squared concurrence of a two-qubit density operator. Throws ArgumentError
/// for a non-two-qubit or malformed operator.
double tangle(const DensityOperator &rho);

/// Tangle of the two-qubit marginal (a, b) of a pure register, computed from
/// the marginal's exact ensemble {<r|psi>} over configurations r of the other
/// qubits: the alphas are the singular values of v_r^T (sigma_y (x) sigma_y) v_s.
/// Agrees with tangle(reduced_density(state, {a, b})) but avoids square roots
/// of near-zero eigenvalues.
double pair_tangle(const PureState &state, std::size_t a, std::size_t b);

/// 4 det(rho_qubit) for a pure register: entanglement of one qubit with the rest.
double tangle_pure_cut(const PureState &state, std::size_t qubit);

/// tau_{i|jk} - tau_{i|j} - tau_{i|k} for roots i = 0, 1, 2 (unclamped).
std::array<double, 3> three_tangle_by_root(const PureState &state);

/// Three-tangle from root 0, cross-checked against roots 1 and 2. Throws
/// NumericalError when the roots disagree beyond 1e-6 or the value is below -1e-9.
double three_tangle(const PureState &state);

/// Pairwise tangles plus (pure only) one-vs-rest tangles and the three-tangle.
TangleReport tangle_report(const PureState &state);
TangleReport tangle_report(const DensityOperator &rho);

/// Running means of TangleReport fields; optional fields average only while
/// every added report carried them.
class RunningTangles {
   public:
    void add(const TangleReport &report);
    TangleReport mean() const;
    std::size_t count() const { return count_; }

   private:
    std::size_t count_ = 0;
    TangleReport mean_;
};

/// Running means of the tangles over t' = 0..t, for every t. Consumes the trajectory.
std::vector<TangleReport> time_averaged_tangles(Trajectory &trajectory);
std::vector<TangleReport> time_averaged_tangles(DensityTrajectory &trajectory);

enum class WSpanForm {
    /// span{ |psi phi ... phi>, |phi psi phi ...>, ..., |phi ... phi psi> }
    insertions,
    /// The insertions plus |phi ... phi>, i.e. ground state and single
    /// excitations in the local basis {phi, phi_perp}.
    with_ground,
};

/// Orthonormal basis of the W-type subspace built from psi and phi, reusable
/// across a trajectory.
class WSpanProjector {
   public:
    /// Throws DegenerateSpanError when |<psi|phi>| > 1 - 1e-8, ArgumentError when n_qubits < 3.
    WSpanProjector(std::size_t n_qubits, const PureState &psi, const PureState &phi,
                   WSpanForm form = WSpanForm::with_ground);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t rank() const { return basis_.size(); }

    /// Norm of the component of `state` orthogonal to the span.
    double residual(const PureState &state) const;

   private:
    std::size_t n_qubits_;
    std::vector<Eigen::VectorXcd> basis_;
};

double w_span_residual(const PureState &state, const PureState &psi, const PureState &phi,
                       WSpanForm form = WSpanForm::with_ground);

/// Norm of the component outside span{|0...0>, |1...1>}.
double ghz_span_residual(const PureState &state);

/// Probability of each Hamming weight 0..n of the basis index.
std::vector<double> hamming_weight_distribution(const PureState &state);

/// Norm of the component outside the basis states of Hamming weight `weight`.
double hamming_sector_residual(const PureState &state, std::size_t weight);

}  // namespace collide
