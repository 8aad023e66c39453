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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "gtubqc/angle.h"
#include "gtubqc/qcore.h"

namespace gtubqc {

enum class Axis { kX, kY, kZ };

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view text);

/// R_axis(angle) = exp(-i angle sigma_axis / 2).
struct RotationGate {
    Axis axis;
    Angle angle;

    bool operator==(const RotationGate &other) const = default;
};

/// 2x2 rotation matrix. Angle 0 gives exactly I.
Matrix rotation_matrix(Axis axis, double radians);
Unitary rotation_matrix(const RotationGate &gate);

/// R(a) R(b) = R(a + b) for gates on the same axis. Throws on axis mismatch.
RotationGate compose_same_axis(const RotationGate &g1, const RotationGate &g2);

/// |0><0| (x) I + |1><1| (x) R_axis(angle); the control is the first (most significant) wire.
Unitary controlled_rotation_matrix(Axis axis, const Angle &angle);

/// Product of gates in operator order: gates[0] * gates[1] * ... (gates.back() acts first).
Matrix operator_product(std::span<const RotationGate> gates);

enum class EulerOrder { kZYZ, kYZY, kZXZ, kXZX, kYXY, kXYX };

inline constexpr std::array<EulerOrder, 6> kAllEulerOrders{
    EulerOrder::kZYZ, EulerOrder::kYZY, EulerOrder::kZXZ, EulerOrder::kXZX, EulerOrder::kYXY, EulerOrder::kXYX};

std::string_view euler_order_name(EulerOrder order);
EulerOrder parse_euler_order(std::string_view text);
/// (outer axis, middle axis) of an order, e.g. zyz -> (Z, Y).
std::pair<Axis, Axis> euler_axes(EulerOrder order);

/// U = e^{i phase} R_a(alpha) R_b(beta) R_a(gamma) with (a, b) = euler_axes(order).
struct EulerTriple {
    EulerOrder order;
    Angle phase;
    Angle alpha;
    Angle beta;
    Angle gamma;

    Matrix matrix() const;
    std::string to_string() const;
};

/// Euler angles of a 2x2 unitary in the given order, phase-exact.
///
/// Conventions: beta in [0, pi]; alpha, gamma and phase in (-pi, pi]. When
/// beta is 0 or pi only alpha +/- gamma is determined; alpha is then fixed to 0.
/// Angles within 1e-12 of a multiple of pi/8 are snapped to the exact value.
/// Throws std::invalid_argument when u is not unitary within 1e-10.
EulerTriple euler_decompose(const Matrix &u, EulerOrder order);

enum class NamedGate { kH, kS, kT, kX, kY, kZ };

inline constexpr std::array<NamedGate, 6> kAllNamedGates{NamedGate::kH, NamedGate::kS, NamedGate::kT,
                                                          NamedGate::kX, NamedGate::kY, NamedGate::kZ};

std::string_view named_gate_name(NamedGate gate);
NamedGate parse_named_gate(std::string_view text);
Matrix named_gate_matrix(NamedGate gate);

/// A tabulated decomposition, stored verbatim, plus how well it reproduces the gate.
struct TableEntry {
    NamedGate gate;
    EulerTriple triple;
    /// Unit c with gate ~ c * triple.matrix(), from the largest-entry ratio.
    Complex residual_phase;
    /// max_ij |gate - c * triple.matrix()|.
    double deviation;

    bool matches_up_to_phase(double tolerance = tol::kStructural) const {
        return deviation <= tolerance;
    }
    bool phase_exact(double tolerance = tol::kStructural) const {
        return matches_up_to_phase(tolerance) && std::abs(residual_phase - Complex(1)) <= tolerance;
    }
};

/// Tabulated decompositions of H, S, T, X, Y, Z in the zyz, yxy and zxz orders.
/// Throws std::invalid_argument for any other order.
TableEntry named_gate_table(NamedGate gate, EulerOrder order);

/// U = e^{i alpha} A X B X C with A B C = I, where
/// A = Rz(beta) Ry(gamma/2), B = Ry(-gamma/2) Rz(-(delta+beta)/2), C = Rz((delta-beta)/2)
/// and U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ABCDecomposition {
    /// Operator order (see operator_product).
    std::vector<RotationGate> a_seq;
    std::vector<RotationGate> b_seq;
    std::vector<RotationGate> c_seq;
    Angle alpha;
    Angle beta;
    Angle gamma;
    Angle delta;

    Matrix a() const {
        return operator_product(a_seq);
    }
    Matrix b() const {
        return operator_product(b_seq);
    }
    Matrix c() const {
        return operator_product(c_seq);
    }
    /// e^{i alpha} A X B X C.
    Matrix reconstruct() const;
};

ABCDecomposition abc_from_zyz(const Angle &alpha, const Angle &beta, const Angle &gamma, const Angle &delta);
/// Throws std::invalid_argument when u is not unitary within 1e-10.
ABCDecomposition abc_decompose(const Matrix &u);
/// Exact decomposition of diag(1, e^{i phi}): gamma = 0, beta = 0, delta = phi, alpha = phi/2.
ABCDecomposition abc_for_phase(const Angle &phi);

}  // namespace gtubqc
