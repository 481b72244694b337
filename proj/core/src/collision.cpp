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

#include "collide/collision.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "collide/errors.hpp"

namespace collide {

std::string_view to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::random:
            return "random";
        case SequenceKind::periodic:
            return "periodic";
        case SequenceKind::explicit_list:
            break;
    }
    return "explicit";
}

Eigen::Matrix4cd partial_swap_pair(double eta) {
    const Complex c{std::cos(eta), 0.0};
    const Complex is{0.0, std::sin(eta)};
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = c + is;
    u(3, 3) = c + is;
    u(1, 1) = c;
    u(2, 2) = c;
    u(1, 2) = is;
    u(2, 1) = is;
    return u;
}

namespace {

void check_n_env(std::size_t n_env) {
    if (n_env == 0) {
        throw ArgumentError("the environment needs at least one qubit");
    }
    if (n_env + 1 > kMaxQubits) {
        throw ArgumentError("environment of " + std::to_string(n_env) + " qubits exceeds the register limit");
    }
}

// Unbiased draw from [0, bound) by rejecting the low 2^64 mod bound outputs.
std::uint64_t bounded_draw(std::mt19937_64 &gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = gen();
        if (x >= threshold) return x % bound;
    }
}

}  // namespace

CollisionSequence sequence_random(std::size_t length, std::size_t n_env, std::uint64_t seed) {
    check_n_env(n_env);
    CollisionSequence seq{SequenceKind::random, n_env, {}, seed};
    seq.indices.reserve(length);
    std::mt19937_64 gen(seed);
    for (std::size_t t = 0; t < length; ++t) {
        seq.indices.push_back(static_cast<std::uint32_t>(bounded_draw(gen, n_env) + 1));
    }
    return seq;
}

CollisionSequence sequence_periodic(std::size_t length, std::size_t n_env) {
    check_n_env(n_env);
    CollisionSequence seq{SequenceKind::periodic, n_env, {}, std::nullopt};
    seq.indices.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
        seq.indices.push_back(static_cast<std::uint32_t>(t % n_env + 1));
    }
    return seq;
}

CollisionSequence sequence_explicit(std::vector<std::uint32_t> indices, std::size_t n_env) {
    check_n_env(n_env);
    for (std::size_t t = 0; t < indices.size(); ++t) {
        if (indices[t] < 1 || indices[t] > n_env) {
            throw ArgumentError("collision " + std::to_string(t + 1) + " targets environment qubit " +
                                std::to_string(indices[t]) + ", valid range is 1.." + std::to_string(n_env));
        }
    }
    return {SequenceKind::explicit_list, n_env, std::move(indices), std::nullopt};
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace detail {

PartialSwap PartialSwap::forward(double eta) {
    const double c = std::cos(eta);
    const double s = std::sin(eta);
    return {Complex{c, s}, Complex{c, 0.0}, Complex{0.0, s}};
}

void check_env_index(std::size_t n_qubits, std::size_t env_index) {
    if (env_index < 1 || env_index >= n_qubits) {
        throw ArgumentError("environment index " + std::to_string(env_index) + " out of range 1.." +
                            std::to_string(n_qubits - 1));
    }
}

void apply_partial_swap(Complex *data, std::ptrdiff_t stride, std::size_t n_qubits, std::size_t env_index,
                        const PartialSwap &u) {
    const std::size_t sys = qubit_mask(n_qubits, 0);
    const std::size_t env = qubit_mask(n_qubits, env_index);
    const std::size_t dim = std::size_t{1} << n_qubits;
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & (sys | env)) continue;
        Complex &a00 = data[static_cast<std::ptrdiff_t>(i) * stride];
        Complex &a01 = data[static_cast<std::ptrdiff_t>(i | env) * stride];
        Complex &a10 = data[static_cast<std::ptrdiff_t>(i | sys) * stride];
        Complex &a11 = data[static_cast<std::ptrdiff_t>(i | sys | env) * stride];
        const Complex x01 = a01;
        const Complex x10 = a10;
        a00 *= u.diagonal;
        a11 *= u.diagonal;
        a01 = u.keep * x01 + u.exchange * x10;
        a10 = u.keep * x10 + u.exchange * x01;
    }
}

namespace {

void conjugate_in_place(Eigen::MatrixXcd &m, std::size_t n_qubits, std::size_t env_index, const PartialSwap &u) {
    const auto dim = m.rows();
    const PartialSwap u_conj = u.conjugate();
    // Column-major: columns are contiguous, rows have stride dim.
    for (Eigen::Index c = 0; c < dim; ++c) {
        apply_partial_swap(m.data() + c * dim, 1, n_qubits, env_index, u);
    }
    for (Eigen::Index r = 0; r < dim; ++r) {
        apply_partial_swap(m.data() + r, dim, n_qubits, env_index, u_conj);
    }
}

}  // namespace

}  // namespace detail

PureState apply_collision(PureState state, std::size_t env_index, double eta) {
    detail::check_env_index(state.n_qubits(), env_index);
    auto amps = state.mutable_amplitudes();
    detail::apply_partial_swap(amps.data(), 1, state.n_qubits(), env_index, detail::PartialSwap::forward(eta));
    return state;
}

DensityOperator apply_collision(DensityOperator rho, std::size_t env_index, double eta) {
    detail::check_env_index(rho.n_qubits(), env_index);
    detail::conjugate_in_place(rho.mutable_matrix(), rho.n_qubits(), env_index, detail::PartialSwap::forward(eta));
    return rho;
}

namespace {

void check_dimensions(std::size_t n_qubits, const CollisionParams &params, const CollisionSequence &sequence) {
    if (params.n_env == 0) {
        throw ArgumentError("the environment needs at least one qubit");
    }
    if (n_qubits != params.n_env + 1) {
        throw ArgumentError("initial state has " + std::to_string(n_qubits) + " qubits, expected n_env + 1 = " +
                            std::to_string(params.n_env + 1));
    }
    for (std::uint32_t index : sequence.indices) {
        if (index < 1 || index > params.n_env) {
            throw ArgumentError("sequence index " + std::to_string(index) + " out of range 1.." +
                                std::to_string(params.n_env));
        }
    }
}

}  // namespace

template <class State>
BasicTrajectory<State>::BasicTrajectory(State initial, CollisionParams params, CollisionSequence sequence)
    : state_(std::move(initial)),
      params_(params),
      sequence_(std::move(sequence)),
      forward_(detail::PartialSwap::forward(params.eta)) {
    check_dimensions(state_.n_qubits(), params_, sequence_);
}

template <class State>
void BasicTrajectory<State>::advance() {
    if (!has_next()) {
        throw std::out_of_range("trajectory exhausted");
    }
    const std::size_t env_index = sequence_[step_];
    if constexpr (std::is_same_v<State, PureState>) {
        auto amps = state_.mutable_amplitudes();
        detail::apply_partial_swap(amps.data(), 1, state_.n_qubits(), env_index, forward_);
    } else {
        detail::conjugate_in_place(state_.mutable_matrix(), state_.n_qubits(), env_index, forward_);
    }
    ++step_;
}

template class BasicTrajectory<PureState>;
template class BasicTrajectory<DensityOperator>;

Trajectory evolve(PureState initial, CollisionParams params, CollisionSequence sequence) {
    return Trajectory(std::move(initial), params, std::move(sequence));
}

DensityTrajectory evolve_density(DensityOperator initial, CollisionParams params, CollisionSequence sequence) {
    return DensityTrajectory(std::move(initial), params, std::move(sequence));
}

}  // namespace collide
