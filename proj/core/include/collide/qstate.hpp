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

// Dense multi-qubit states.
//
// Basis convention: for an n-qubit register the basis index is the binary
// number q0 q1 ... q(n-1), i.e. qubit 0 (the system) is the most significant
// bit and qubit n-1 the least significant.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace collide {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kMaxQubits = 20;

/// Bit mask selecting `qubit` in the basis index of an n-qubit register.
constexpr std::size_t qubit_mask(std::size_t n_qubits, std::size_t qubit) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

/// Normalized pure state of n qubits.
class PureState {
   public:
    /// Validates length 2^n and unit norm within `tolerance`.
    PureState(std::size_t n_qubits, Eigen::VectorXcd amplitudes, double tolerance = kDefaultTolerance);

    /// Computational basis state |index>.
    static PureState basis(std::size_t n_qubits, std::size_t index);

    /// Rescales `amplitudes` to unit norm. Throws ArgumentError on a zero vector.
    static PureState normalized(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

    /// Direct access for in-place unitary kernels. The caller keeps the
    /// vector normalized.
    std::span<Complex> mutable_amplitudes() { return {amplitudes_.data(), dimension()}; }

    double norm_squared() const { return amplitudes_.squaredNorm(); }

   private:
    std::size_t n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

/// Density operator on n qubits: Hermitian, unit trace, positive semidefinite.
class DensityOperator {
   public:
    /// Validates shape, Hermiticity, trace and (for dimension <= 64) the
    /// spectrum, each within `tolerance`.
    DensityOperator(std::size_t n_qubits, Eigen::MatrixXcd matrix, double tolerance = kDefaultTolerance);

    /// Maximally mixed state I / 2^n.
    static DensityOperator maximally_mixed(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Direct access for in-place conjugation kernels.
    Eigen::MatrixXcd &mutable_matrix() { return matrix_; }

    /// max_ij |M - M^dagger|_ij
    double hermiticity_error() const;
    Complex trace() const { return matrix_.trace(); }

   private:
    struct Unchecked {};
    DensityOperator(Unchecked, std::size_t n_qubits, Eigen::MatrixXcd matrix);

    std::size_t n_qubits_;
    Eigen::MatrixXcd matrix_;

    friend DensityOperator to_density(const PureState &state);
    friend DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> keep);
    friend DensityOperator reduced_density(const PureState &state, std::span<const std::size_t> keep);
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 &operator+=(const Vec3 &o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3 &operator-=(const Vec3 &o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3 &operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend bool operator==(const Vec3 &, const Vec3 &) = default;

    double norm() const;
    double max_abs() const;
};

enum class Axis { x = 0, y = 1, z = 2 };

inline double component(const Vec3 &v, Axis axis) {
    switch (axis) {
        case Axis::x:
            return v.x;
        case Axis::y:
            return v.y;
        case Axis::z:
            break;
    }
    return v.z;
}

char axis_name(Axis axis);

/// (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z) of a single qubit.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 vec() const { return {x, y, z}; }
    double norm() const { return vec().norm(); }
    friend bool operator==(const BlochVector &, const BlochVector &) = default;
};

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
PureState single_qubit_from_angles(double theta, double phi = 0.0);

/// a (x) b; a occupies the more significant bits. Throws ArgumentError when
/// the result would exceed kMaxQubits.
PureState tensor(const PureState &a, const PureState &b);

/// (|00> + |11>) / sqrt(2)
PureState bell_pair();

/// (|0...0> + |1...1>) / sqrt(2)
PureState ghz_state(std::size_t n_qubits);

/// Uniform superposition of the n single-excitation basis states.
PureState w_state(std::size_t n_qubits);

DensityOperator to_density(const PureState &state);

/// Reduced density operator on `keep`, in the given order (keep[0] becomes
/// the most significant qubit of the result).
DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator &rho, std::initializer_list<std::size_t> keep);

/// Same as partial_trace(to_density(state), keep) without forming the full
/// 2^n x 2^n matrix.
DensityOperator reduced_density(const PureState &state, std::span<const std::size_t> keep);
DensityOperator reduced_density(const PureState &state, std::initializer_list<std::size_t> keep);

BlochVector bloch_vector(const DensityOperator &rho);

/// Bloch vector of one qubit of a pure register.
BlochVector bloch_vector(const PureState &state, std::size_t qubit);

/// Bloch vector of one qubit of a (possibly mixed) register.
BlochVector bloch_vector(const DensityOperator &rho, std::size_t qubit);

/// Sum of all single-qubit Bloch vectors.
Vec3 total_bloch_vector(const PureState &state);
Vec3 total_bloch_vector(const DensityOperator &rho);

}  // namespace collide
