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

// Partial-swap collisions between the system qubit (qubit 0) and the
// environment qubits 1..N, collision sequences, and step-by-step evolution.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "collide/qstate.hpp"

namespace collide {

struct CollisionParams {
    /// Coupling angle of every collision. Used as given; the unitary has period 2*pi in eta.
    double eta = 0.0;
    /// Number of environment qubits N; the register has N + 1 qubits.
    std::size_t n_env = 2;
};

enum class SequenceKind { random, periodic, explicit_list };

std::string_view to_string(SequenceKind kind);

/// Name of the generator behind sequence_random, recorded in run metadata.
inline constexpr std::string_view kPrngName = "mt19937_64";

struct CollisionSequence {
    SequenceKind kind = SequenceKind::explicit_list;
    std::size_t n_env = 0;
    /// Environment qubit hit at each step, each in [1, n_env].
    std::vector<std::uint32_t> indices;
    /// Present iff kind == random.
    std::optional<std::uint64_t> seed;

    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
    std::uint32_t operator[](std::size_t step) const { return indices[step]; }
};

/// cos(eta) I + i sin(eta) SWAP on two qubits, in the |q_a q_b> basis.
Eigen::Matrix4cd partial_swap_pair(double eta);

/// Independent draws, uniform on {1..n_env}, from mt19937_64 seeded with
/// `seed`. Identical arguments always give identical output.
CollisionSequence sequence_random(std::size_t length, std::size_t n_env, std::uint64_t seed);

/// 1, 2, ..., n_env, 1, 2, ...
CollisionSequence sequence_periodic(std::size_t length, std::size_t n_env);

/// Validates every index against n_env.
CollisionSequence sequence_explicit(std::vector<std::uint32_t> indices, std::size_t n_env);

/// Seed of the `stream`-th independent substream derived from `seed`
/// (SplitMix64 finalizer applied to seed + stream * golden gamma).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Collision between qubit 0 and qubit `env_index` (1-based environment label).
PureState apply_collision(PureState state, std::size_t env_index, double eta);

/// rho -> U rho U^dagger for the same collision.
DensityOperator apply_collision(DensityOperator rho, std::size_t env_index, double eta);

namespace detail {

/// Precomputed coefficients of the partial swap.
struct PartialSwap {
    Complex diagonal;  // e^{i eta}: action on |00> and |11>
    Complex keep;      // cos(eta)
    Complex exchange;  // i sin(eta)

    static PartialSwap forward(double eta);
    PartialSwap conjugate() const { return {std::conj(diagonal), std::conj(keep), std::conj(exchange)}; }
};

/// In-place application to a strided vector of 2^n amplitudes.
void apply_partial_swap(Complex *data, std::ptrdiff_t stride, std::size_t n_qubits, std::size_t env_index,
                        const PartialSwap &u);

void check_env_index(std::size_t n_qubits, std::size_t env_index);

}  // namespace detail

/// Lazily evolves a state through a collision sequence. The current state
/// starts at step 0 (the initial state); each advance() applies exactly one
/// collision. Single consumer.
template <class State>
class BasicTrajectory {
   public:
    BasicTrajectory(State initial, CollisionParams params, CollisionSequence sequence);

    std::size_t step() const { return step_; }
    /// Number of collisions in the sequence; the last step index.
    std::size_t length() const { return sequence_.size(); }
    bool has_next() const { return step_ < sequence_.size(); }
    const State &state() const { return state_; }
    const CollisionParams &params() const { return params_; }
    const CollisionSequence &sequence() const { return sequence_; }

    /// Applies the collision of step() + 1. Throws std::out_of_range when exhausted.
    void advance();

    /// Calls fn(t, state) for the current and every remaining step.
    template <class Fn>
    void for_each(Fn &&fn) {
        for (;;) {
            fn(step_, static_cast<const State &>(state_));
            if (!has_next()) break;
            advance();
        }
    }

   private:
    State state_;
    CollisionParams params_;
    CollisionSequence sequence_;
    detail::PartialSwap forward_;
    std::size_t step_ = 0;
};

using Trajectory = BasicTrajectory<PureState>;
using DensityTrajectory = BasicTrajectory<DensityOperator>;

extern template class BasicTrajectory<PureState>;
extern template class BasicTrajectory<DensityOperator>;

/// Throws ArgumentError when `initial` does not have params.n_env + 1 qubits
/// or the sequence does not match params.n_env.
Trajectory evolve(PureState initial, CollisionParams params, CollisionSequence sequence);
DensityTrajectory evolve_density(DensityOperator initial, CollisionParams params, CollisionSequence sequence);

}  // namespace collide
