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

#include "gtubqc/rotations.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace gtubqc;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix basis_change_for(EulerOrder order);

/// Snaps a radian value onto k*pi/8 when within 1e-12, returning an exact angle.
Angle snap(double radians) {
    double k = std::round(radians / (kPi / 8));
    if (std::abs(radians - k * kPi / 8) <= 1e-12) {
        return Angle::pi(static_cast<int64_t>(k), 8);
    }
    return Angle::from_radians(radians);
}

/// Snaps, then folds into (-pi, pi] (exactly, for snapped values).
Angle snap_wrapped(double radians) {
    Angle a = snap(radians);
    if (!a.is_exact()) {
        return Angle::from_radians(wrap_to_pi(radians));
    }
    Angle r = reduce_mod_2pi(a).reduced;
    if (r.radians() > std::numbers::pi) {
        r = r - Angle::pi(2);
    }
    return r;
}

/// zyz angles of a 2x2 unitary; phase is recomputed by the caller.
std::array<double, 3> zyz_angles(const Matrix &w) {
    Complex det = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
    double theta0 = std::arg(det) / 2;
    Matrix v = w * std::exp(Complex(0, -theta0));
    double c = std::abs(v(0, 0));
    double s = std::abs(v(1, 0));
    double beta = 2 * std::atan2(s, c);
    double alpha = 0;
    double gamma = 0;
    constexpr double kDegenerate = 1e-12;
    if (s <= kDegenerate) {
        beta = 0;
        gamma = 2 * std::arg(v(1, 1));
    } else if (c <= kDegenerate) {
        beta = kPi;
        gamma = -2 * std::arg(v(1, 0));
    } else {
        double sum = 2 * std::arg(v(1, 1));
        double diff = 2 * std::arg(v(1, 0));
        alpha = (sum + diff) / 2;
        gamma = (sum - diff) / 2;
    }
    return {alpha, beta, gamma};
}

Matrix pauli_of(Axis axis) {
    switch (axis) {
        case Axis::kX:
            return pauli::X();
        case Axis::kY:
            return pauli::Y();
        case Axis::kZ:
            return pauli::Z();
    }
    throw std::logic_error("bad axis");
}

/// A Clifford V with V sigma_outer V^dagger = Z and V sigma_middle V^dagger = Y,
/// found by breadth-first search over words in H and S.
Matrix basis_change_for(EulerOrder order) {
    auto [outer, middle] = euler_axes(order);
    Matrix target_outer = pauli_of(outer);
    Matrix target_middle = pauli_of(middle);
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Matrix s(2, 2);
    s << 1, 0, 0, Complex(0, 1);
    std::vector<Matrix> frontier{Matrix::Identity(2, 2)};
    for (int depth = 0; depth < 8; depth++) {
        std::vector<Matrix> next;
        for (const Matrix &v : frontier) {
            if ((v * target_outer * v.adjoint() - pauli::Z()).cwiseAbs().maxCoeff() < 1e-12 &&
                (v * target_middle * v.adjoint() - pauli::Y()).cwiseAbs().maxCoeff() < 1e-12) {
                return v;
            }
            next.push_back(h * v);
            next.push_back(s * v);
        }
        frontier = std::move(next);
    }
    throw std::logic_error("no Clifford basis change found");
}

const Matrix &cached_basis_change(EulerOrder order) {
    static const std::array<Matrix, 6> cache = [] {
        std::array<Matrix, 6> out;
        for (EulerOrder o : kAllEulerOrders) {
            out[static_cast<size_t>(o)] = basis_change_for(o);
        }
        return out;
    }();
    return cache[static_cast<size_t>(order)];
}

void require_unitary_2x2(const Matrix &u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw std::invalid_argument("Expected a 2x2 matrix.");
    }
    double r = unitarity_residual(u);
    if (!(r <= tol::kStructural)) {
        throw std::invalid_argument("Matrix is not unitary: max|U^dagger U - I| = " + std::to_string(r));
    }
}

}  // namespace

std::string_view gtubqc::axis_name(Axis axis) {
    switch (axis) {
        case Axis::kX:
            return "X";
        case Axis::kY:
            return "Y";
        case Axis::kZ:
            return "Z";
    }
    return "?";
}

Axis gtubqc::parse_axis(std::string_view text) {
    if (text == "X" || text == "x") {
        return Axis::kX;
    }
    if (text == "Y" || text == "y") {
        return Axis::kY;
    }
    if (text == "Z" || text == "z") {
        return Axis::kZ;
    }
    throw std::invalid_argument("Unknown axis '" + std::string(text) + "'.");
}

Matrix gtubqc::rotation_matrix(Axis axis, double radians) {
    Matrix m(2, 2);
    if (radians == 0) {
        return Matrix::Identity(2, 2);
    }
    double c = std::cos(radians / 2);
    double s = std::sin(radians / 2);
    switch (axis) {
        case Axis::kX:
            m << c, Complex(0, -s), Complex(0, -s), c;
            break;
        case Axis::kY:
            m << c, -s, s, c;
            break;
        case Axis::kZ:
            m << Complex(c, -s), 0, 0, Complex(c, s);
            break;
    }
    return m;
}

Unitary gtubqc::rotation_matrix(const RotationGate &gate) {
    return Unitary::from_matrix(rotation_matrix(gate.axis, gate.angle.radians()));
}

RotationGate gtubqc::compose_same_axis(const RotationGate &g1, const RotationGate &g2) {
    if (g1.axis != g2.axis) {
        throw std::invalid_argument("compose_same_axis: axis mismatch (" + std::string(axis_name(g1.axis)) + " vs " +
                                    std::string(axis_name(g2.axis)) + ").");
    }
    return {g1.axis, g1.angle + g2.angle};
}

Unitary gtubqc::controlled_rotation_matrix(Axis axis, const Angle &angle) {
    Matrix m = Matrix::Identity(4, 4);
    m.block(2, 2, 2, 2) = rotation_matrix(axis, angle.radians());
    return Unitary::from_matrix(std::move(m));
}

Matrix gtubqc::operator_product(std::span<const RotationGate> gates) {
    Matrix m = Matrix::Identity(2, 2);
    for (const RotationGate &g : gates) {
        m = m * rotation_matrix(g.axis, g.angle.radians());
    }
    return m;
}

std::string_view gtubqc::euler_order_name(EulerOrder order) {
    switch (order) {
        case EulerOrder::kZYZ:
            return "zyz";
        case EulerOrder::kYZY:
            return "yzy";
        case EulerOrder::kZXZ:
            return "zxz";
        case EulerOrder::kXZX:
            return "xzx";
        case EulerOrder::kYXY:
            return "yxy";
        case EulerOrder::kXYX:
            return "xyx";
    }
    return "?";
}

EulerOrder gtubqc::parse_euler_order(std::string_view text) {
    for (EulerOrder o : kAllEulerOrders) {
        if (euler_order_name(o) == text) {
            return o;
        }
    }
    throw std::invalid_argument("Unknown Euler order '" + std::string(text) + "'.");
}

std::pair<Axis, Axis> gtubqc::euler_axes(EulerOrder order) {
    switch (order) {
        case EulerOrder::kZYZ:
            return {Axis::kZ, Axis::kY};
        case EulerOrder::kYZY:
            return {Axis::kY, Axis::kZ};
        case EulerOrder::kZXZ:
            return {Axis::kZ, Axis::kX};
        case EulerOrder::kXZX:
            return {Axis::kX, Axis::kZ};
        case EulerOrder::kYXY:
            return {Axis::kY, Axis::kX};
        case EulerOrder::kXYX:
            return {Axis::kX, Axis::kY};
    }
    throw std::logic_error("bad order");
}

Matrix EulerTriple::matrix() const {
    auto [outer, middle] = euler_axes(order);
    return std::exp(Complex(0, phase.radians())) * rotation_matrix(outer, alpha.radians()) *
           rotation_matrix(middle, beta.radians()) * rotation_matrix(outer, gamma.radians());
}

std::string EulerTriple::to_string() const {
    std::ostringstream ss;
    ss << euler_order_name(order) << ": phase=" << phase.to_string() << " alpha=" << alpha.to_string()
       << " beta=" << beta.to_string() << " gamma=" << gamma.to_string();
    return ss.str();
}

EulerTriple gtubqc::euler_decompose(const Matrix &u, EulerOrder order) {
    require_unitary_2x2(u);
    const Matrix &v = cached_basis_change(order);
    Matrix w = v * u * v.adjoint();
    auto [alpha, beta, gamma] = zyz_angles(w);
    EulerTriple out{order, Angle::zero(), snap_wrapped(alpha), snap(beta), snap_wrapped(gamma)};
    Matrix r = out.matrix();
    double phase = std::arg((r.adjoint() * u).trace());
    out.phase = snap_wrapped(phase);
    return out;
}

std::string_view gtubqc::named_gate_name(NamedGate gate) {
    switch (gate) {
        case NamedGate::kH:
            return "H";
        case NamedGate::kS:
            return "S";
        case NamedGate::kT:
            return "T";
        case NamedGate::kX:
            return "X";
        case NamedGate::kY:
            return "Y";
        case NamedGate::kZ:
            return "Z";
    }
    return "?";
}

NamedGate gtubqc::parse_named_gate(std::string_view text) {
    for (NamedGate g : kAllNamedGates) {
        if (named_gate_name(g) == text) {
            return g;
        }
    }
    throw std::invalid_argument("Unknown single-qubit gate '" + std::string(text) + "'.");
}

Matrix gtubqc::named_gate_matrix(NamedGate gate) {
    Matrix m(2, 2);
    switch (gate) {
        case NamedGate::kH:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case NamedGate::kS:
            m << 1, 0, 0, Complex(0, 1);
            return m;
        case NamedGate::kT:
            m << 1, 0, 0, std::exp(Complex(0, kPi / 4));
            return m;
        case NamedGate::kX:
            return pauli::X();
        case NamedGate::kY:
            return pauli::Y();
        case NamedGate::kZ:
            return pauli::Z();
    }
    throw std::logic_error("bad gate");
}

namespace {

struct RawEntry {
    NamedGate gate;
    // e^{i phase} R_a(alpha) R_b(beta) R_a(gamma), all as (num, den) multiples of pi.
    Rational phase, alpha, beta, gamma;
};

// Single-rotation entries put their angle in the gamma slot (alpha = 0 tie-break);
// two-rotation entries keep the tabulated left-to-right operator order.
const std::vector<RawEntry> &raw_table(EulerOrder order) {
    // H = e^{i pi/2} Ry(pi/2) Rz(pi), S = e^{i pi/4} Rz(pi/2), T = e^{i pi/8} Rz(pi/4),
    // X = e^{i pi/2} Ry(pi) Rz(pi), Y = -i e^{i pi} Ry(pi), Z = e^{i pi/2} Rz(pi).
    static const std::vector<RawEntry> zyz{
        {NamedGate::kH, {1, 2}, {0}, {1, 2}, {1}},
        {NamedGate::kS, {1, 4}, {0}, {0}, {1, 2}},
        {NamedGate::kT, {1, 8}, {0}, {0}, {1, 4}},
        {NamedGate::kX, {1, 2}, {0}, {1}, {1}},
        {NamedGate::kY, {1, 2}, {0}, {1}, {0}},
        {NamedGate::kZ, {1, 2}, {0}, {0}, {1}},
    };
    // S = e^{i pi/4} Ry(-pi/2) Rx(pi/2) Ry(pi/2), H = e^{i pi} Rx(pi) Ry(pi/2),
    // Z = e^{i pi/2} Ry(-pi/2) Rx(pi) Ry(pi/2), X = e^{i pi/2} Rx(pi),
    // T = e^{i pi/8} Ry(-pi/2) Rx(pi/4) Ry(pi/2), Y = -i e^{i pi} Ry(pi).
    static const std::vector<RawEntry> yxy{
        {NamedGate::kH, {1}, {0}, {1}, {1, 2}},
        {NamedGate::kS, {1, 4}, {-1, 2}, {1, 2}, {1, 2}},
        {NamedGate::kT, {1, 8}, {-1, 2}, {1, 4}, {1, 2}},
        {NamedGate::kX, {1, 2}, {0}, {1}, {0}},
        {NamedGate::kY, {1, 2}, {0}, {0}, {1}},
        {NamedGate::kZ, {1, 2}, {-1, 2}, {1}, {1, 2}},
    };
    // H = e^{i pi/2} Rz(pi/2) Rx(pi/2) Rz(pi/2), S = e^{i pi/4} Rz(pi/2), Z = e^{i pi/2} Rz(pi),
    // Y = -i Rz(pi/2) Rx(pi) Rz(pi), T = e^{i pi/8} Rz(pi/4), X = e^{i pi/2} Rx(pi).
    static const std::vector<RawEntry> zxz{
        {NamedGate::kH, {1, 2}, {1, 2}, {1, 2}, {1, 2}},
        {NamedGate::kS, {1, 4}, {0}, {0}, {1, 2}},
        {NamedGate::kT, {1, 8}, {0}, {0}, {1, 4}},
        {NamedGate::kX, {1, 2}, {0}, {1}, {0}},
        {NamedGate::kY, {-1, 2}, {1, 2}, {1}, {1}},
        {NamedGate::kZ, {1, 2}, {0}, {0}, {1}},
    };
    switch (order) {
        case EulerOrder::kZYZ:
            return zyz;
        case EulerOrder::kYXY:
            return yxy;
        case EulerOrder::kZXZ:
            return zxz;
        default:
            throw std::invalid_argument("No named-gate table for order " + std::string(euler_order_name(order)) +
                                        " (tables exist for zyz, yxy, zxz).");
    }
}

}  // namespace

TableEntry gtubqc::named_gate_table(NamedGate gate, EulerOrder order) {
    for (const RawEntry &e : raw_table(order)) {
        if (e.gate != gate) {
            continue;
        }
        EulerTriple t{order, Angle::pi(e.phase), Angle::pi(e.alpha), Angle::pi(e.beta), Angle::pi(e.gamma)};
        Matrix rec = t.matrix().transpose();
        Matrix g = named_gate_matrix(gate).transpose();
        Eigen::Map<const Vector> gv(g.data(), g.size());
        Eigen::Map<const Vector> rv(rec.data(), rec.size());
        Complex c = global_phase_between(gv, rv).value_or(Complex(1));
        // Row-major flattening, so ties between equal-magnitude entries go to the first row.
        double dev = (g - c * rec).cwiseAbs().maxCoeff();
        return {gate, t, c, dev};
    }
    throw std::invalid_argument("No table entry for " + std::string(named_gate_name(gate)) + ".");
}

Matrix ABCDecomposition::reconstruct() const {
    return std::exp(Complex(0, alpha.radians())) * a() * pauli::X() * b() * pauli::X() * c();
}

ABCDecomposition gtubqc::abc_from_zyz(const Angle &alpha, const Angle &beta, const Angle &gamma, const Angle &delta) {
    Rational half(1, 2);
    ABCDecomposition d;
    d.alpha = alpha;
    d.beta = beta;
    d.gamma = gamma;
    d.delta = delta;
    d.a_seq = {{Axis::kZ, beta}, {Axis::kY, gamma.scaled(half)}};
    d.b_seq = {{Axis::kY, (-gamma).scaled(half)}, {Axis::kZ, (-(delta + beta)).scaled(half)}};
    d.c_seq = {{Axis::kZ, (delta - beta).scaled(half)}};
    return d;
}

ABCDecomposition gtubqc::abc_decompose(const Matrix &u) {
    EulerTriple t = euler_decompose(u, EulerOrder::kZYZ);
    return abc_from_zyz(t.phase, t.alpha, t.beta, t.gamma);
}

ABCDecomposition gtubqc::abc_for_phase(const Angle &phi) {
    return abc_from_zyz(phi.scaled(Rational(1, 2)), Angle::zero(), Angle::zero(), phi);
}
