// Copyright 2026 The gtubqc Authors
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

// Dense complex linear algebra for few-qubit states.
//
// Qubit ordering: wire 0 is the MOST significant bit of a basis index. For an
// n-qubit register, wire w of basis index i is (i >> (n - 1 - w)) & 1, so
// |q0 q1 ... q_{n-1}> reads left to right as a binary number.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtubqc/rng.h"

namespace gtubqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
/// Structural checks: unitarity, Hermiticity of derived matrices.
inline constexpr double kStructural = 1e-10;
/// Numerical equalities between exactly-computed quantities.
inline constexpr double kNumerical = 1e-12;
/// End-to-end fidelities after long protocol runs.
inline constexpr double kFidelity = 1e-9;
}  // namespace tol

/// Two-bit Bell-state label: phi+ <-> 00, psi+ <-> 10, phi- <-> 01, psi- <-> 11.
///
/// b1 is the bit-flip bit and b2 the phase bit, so that
/// bell_state({b1, b2}) = (I (x) X^b1 Z^b2) |phi+>.
struct BellCode {
    uint8_t b1 = 0;
    uint8_t b2 = 0;

    static BellCode from_index(int index);
    /// 2*b1 + b2.
    int index() const {
        return 2 * b1 + b2;
    }
    static BellCode parse(std::string_view text);
    std::string to_string() const;
    BellCode operator^(const BellCode &other) const {
        return {static_cast<uint8_t>(b1 ^ other.b1), static_cast<uint8_t>(b2 ^ other.b2)};
    }
    bool operator==(const BellCode &other) const = default;

    static std::array<BellCode, 4> all();
};

class StateVector {
   public:
    /// Computational basis state |index> on num_qubits wires.
    static StateVector basis(size_t num_qubits, uint64_t index);
    /// Validates that the length is a power of two and the norm is 1 within tolerance.
    static StateVector from_amplitudes(Vector amplitudes, double tolerance = tol::kNumerical);
    /// Skips the normalization check (projections, error-path tests).
    static StateVector unnormalized(Vector amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return static_cast<size_t>(amplitudes_.size());
    }
    const Vector &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](size_t index) const {
        return amplitudes_[static_cast<Eigen::Index>(index)];
    }
    double norm() const {
        return amplitudes_.norm();
    }
    bool is_normalized(double tolerance = tol::kNumerical) const;

    /// this (x) other; this occupies the leading wires.
    StateVector tensor(const StateVector &other) const;
    StateVector normalized() const;
    StateVector scaled(Complex factor) const;

   private:
    StateVector(size_t num_qubits, Vector amplitudes);

    size_t num_qubits_;
    Vector amplitudes_;
};

class Unitary {
   public:
    /// Validates power-of-two dimension and U^dagger U = I entrywise within tolerance.
    static Unitary from_matrix(Matrix matrix, double tolerance = tol::kStructural);
    static Unitary identity(size_t num_qubits);

    const Matrix &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return static_cast<size_t>(matrix_.rows());
    }
    size_t num_qubits() const {
        return num_qubits_;
    }

    Unitary adjoint() const;
    Unitary operator*(const Unitary &rhs) const;
    Unitary tensor(const Unitary &rhs) const;

   private:
    Unitary(size_t num_qubits, Matrix matrix);

    size_t num_qubits_;
    Matrix matrix_;
};

/// max_ij |(U^dagger U - I)_ij|.
double unitarity_residual(const Matrix &m);

class DensityMatrix {
   public:
    /// Validates Hermitian (1e-12), unit trace (1e-12), eigenvalues >= -1e-10.
    static DensityMatrix from_matrix(Matrix matrix);
    static DensityMatrix projector(const StateVector &state);
    static DensityMatrix maximally_mixed(size_t num_qubits);

    const Matrix &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return static_cast<size_t>(matrix_.rows());
    }
    size_t num_qubits() const {
        return num_qubits_;
    }
    Eigen::VectorXd eigenvalues() const;

   private:
    DensityMatrix(size_t num_qubits, Matrix matrix);

    size_t num_qubits_;
    Matrix matrix_;
};

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
}  // namespace pauli

/// Kronecker product a (x) b.
Matrix kron(const Matrix &a, const Matrix &b);

StateVector bell_state(BellCode code);

/// Applies u to the listed wires; targets[0] is the most significant wire of u.
StateVector apply_unitary(const StateVector &state, const Unitary &u, std::span<const size_t> targets);
StateVector apply_unitary(const StateVector &state, const Unitary &u, std::initializer_list<size_t> targets);

/// Unnormalized <bell(code)|_{a,b} |state>, a vector over the remaining wires
/// (in their original relative order). Its squared norm is the outcome probability.
Vector project_bell(const StateVector &state, size_t a, size_t b, BellCode code);

/// Born probabilities of the four Bell outcomes on wires (a, b), indexed by BellCode::index().
std::array<double, 4> bell_probabilities(const StateVector &state, size_t a, size_t b);

struct BellMeasurement {
    BellCode outcome;
    double probability;
    /// Post-measurement state with wires a and b removed.
    StateVector state;
    /// survivors[i] = wire index (in the input state) of new wire i.
    std::vector<size_t> survivors;
};

/// Samples a Bell measurement on wires (a, b). Throws std::invalid_argument
/// when the input is not normalized within 1e-10.
BellMeasurement bell_measure(const StateVector &state, size_t a, size_t b, Rng &rng);
/// Post-selects the given outcome (renormalized by a positive factor, so phases are exact).
/// Throws std::invalid_argument when the outcome has probability 0.
BellMeasurement bell_measure_as(const StateVector &state, size_t a, size_t b, BellCode outcome);

/// Reduced state on `keep` (keep[0] becomes the most significant wire).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<size_t> keep);

/// The unit c with a ~ c*b, taken from the ratio at b's largest-magnitude entry.
/// Empty when that ratio is zero (a vanishes where b peaks).
std::optional<Complex> global_phase_between(const Vector &a, const Vector &b);

/// True iff a unit c exists with max_i |a_i - c*b_i| <= tolerance.
bool equal_up_to_global_phase(const StateVector &a, const StateVector &b, double tolerance);
bool equal_up_to_global_phase(const Matrix &a, const Matrix &b, double tolerance);
bool equal_up_to_global_phase(const Unitary &a, const Unitary &b, double tolerance);

/// max_ij |a_ij - c*b_ij| for the best-ratio phase c (see global_phase_between).
double phase_insensitive_distance(const Matrix &a, const Matrix &b);

/// sum_k w_k |s_k><s_k|.
DensityMatrix average_density(std::span<const StateVector> states, std::span<const double> weights);

/// (1/2) || rho - sigma ||_1.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// Full num_qubits-wire matrix of u acting on `targets` (targets[0] most significant in u).
Matrix embed_unitary(const Matrix &u, std::span<const size_t> targets, size_t num_qubits);

/// New wire i is old wire order[i]; order must be a permutation.
StateVector permute_wires(const StateVector &state, std::span<const size_t> order);

}  // namespace gtubqc
