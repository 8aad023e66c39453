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

#include "gtest/gtest.h"
#include "test_util.test.h"

using namespace gtubqc;
using namespace gtubqc::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix expm_pauli(Axis axis, double t) {
    Matrix p = axis == Axis::kX ? pauli::X() : axis == Axis::kY ? pauli::Y() : pauli::Z();
    return std::cos(t / 2) * pauli::I() - Complex(0, std::sin(t / 2)) * p;
}

}  // namespace

TEST(rotations, matches_exponential) {
    Rng rng(11);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        for (int k = 0; k < 20; k++) {
            double t = random_angle(rng);
            EXPECT_LT(max_abs_diff(rotation_matrix(a, t), expm_pauli(a, t)), 1e-14);
        }
    }
}

TEST(rotations, pi_rotations_are_paulis) {
    Complex mi(0, -1);
    EXPECT_LT(max_abs_diff(rotation_matrix(Axis::kX, kPi), mi * pauli::X()), 1e-15);
    EXPECT_LT(max_abs_diff(rotation_matrix(Axis::kY, kPi), pauli::X() * pauli::Z()), 1e-15);
    EXPECT_LT(max_abs_diff(rotation_matrix(Axis::kZ, kPi), mi * pauli::Z()), 1e-15);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        EXPECT_LT(max_abs_diff(rotation_matrix(a, 2 * kPi), -pauli::I()), 1e-15);
        EXPECT_EQ(rotation_matrix(a, 0), pauli::I());
    }
}

TEST(rotations, pauli_conjugation_flips_sign) {
    // Rz(-t) X = X Rz(t), and analogous anticommuting pairs; commuting pairs leave the angle.
    Rng rng(3);
    for (int k = 0; k < 10; k++) {
        double t = random_angle(rng);
        for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
            for (const Matrix &p : {pauli::X(), pauli::Y(), pauli::Z()}) {
                Matrix r = rotation_matrix(a, t);
                bool commutes = max_abs_diff(r * p, p * r) < 1e-12;
                Matrix lhs = rotation_matrix(a, commutes ? t : -t) * p;
                EXPECT_LT(max_abs_diff(lhs, p * r), 1e-12);
            }
        }
    }
}

TEST(rotations, compose_same_axis) {
    RotationGate g1{Axis::kZ, Angle::pi(1, 4)};
    RotationGate g2{Axis::kZ, Angle::pi(1, 2)};
    RotationGate c = compose_same_axis(g1, g2);
    EXPECT_EQ(c.axis, Axis::kZ);
    EXPECT_EQ(c.angle, Angle::pi(3, 4));
    EXPECT_LT(max_abs_diff(rotation_matrix(c).matrix(),
                           rotation_matrix(g1).matrix() * rotation_matrix(g2).matrix()),
              1e-14);
    EXPECT_THROW(compose_same_axis(g1, {Axis::kX, Angle::pi(1)}), std::invalid_argument);

    Rng rng(5);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        for (int k = 0; k < 20; k++) {
            RotationGate x{a, Angle::from_radians(random_angle(rng))};
            RotationGate y{a, Angle::from_radians(random_angle(rng))};
            EXPECT_LT(max_abs_diff(rotation_matrix(compose_same_axis(x, y)).matrix(),
                                   rotation_matrix(x).matrix() * rotation_matrix(y).matrix()),
                      1e-12);
        }
    }
}

TEST(rotations, controlled_rotation) {
    Unitary u = controlled_rotation_matrix(Axis::kZ, Angle::pi(2));
    Matrix zi = kron(pauli::Z(), pauli::I());
    EXPECT_LT(max_abs_diff(u.matrix(), zi), 1e-15);
    Unitary v = controlled_rotation_matrix(Axis::kX, Angle::pi(1, 3));
    EXPECT_LT(max_abs_diff(v.matrix().block(0, 0, 2, 2), pauli::I()), 1e-15);
    EXPECT_LT(max_abs_diff(v.matrix().block(2, 2, 2, 2), rotation_matrix(Axis::kX, kPi / 3)), 1e-15);
    EXPECT_LT(v.matrix().block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(rotations, euler_orders_and_parsing) {
    for (EulerOrder o : kAllEulerOrders) {
        EXPECT_EQ(parse_euler_order(euler_order_name(o)), o);
    }
    EXPECT_THROW(parse_euler_order("zzz"), std::invalid_argument);
    EXPECT_EQ(euler_axes(EulerOrder::kXZX), std::make_pair(Axis::kX, Axis::kZ));
}

TEST(rotations, euler_named_gates_zyz_exact) {
    struct Case {
        NamedGate g;
        Angle phase, alpha, beta, gamma;
    };
    std::vector<Case> cases{
        {NamedGate::kH, Angle::pi(1, 2), Angle::zero(), Angle::pi(1, 2), Angle::pi(1)},
        {NamedGate::kS, Angle::pi(1, 4), Angle::zero(), Angle::zero(), Angle::pi(1, 2)},
        {NamedGate::kT, Angle::pi(1, 8), Angle::zero(), Angle::zero(), Angle::pi(1, 4)},
        {NamedGate::kZ, Angle::pi(1, 2), Angle::zero(), Angle::zero(), Angle::pi(1)},
    };
    for (const Case &c : cases) {
        EulerTriple t = euler_decompose(named_gate_matrix(c.g), EulerOrder::kZYZ);
        EXPECT_EQ(t.phase, c.phase) << named_gate_name(c.g) << " " << t.to_string();
        EXPECT_EQ(t.alpha, c.alpha) << named_gate_name(c.g);
        EXPECT_EQ(t.beta, c.beta) << named_gate_name(c.g);
        EXPECT_EQ(t.gamma, c.gamma) << named_gate_name(c.g);
    }
}

TEST(rotations, euler_identity_is_all_zero) {
    for (EulerOrder o : kAllEulerOrders) {
        EulerTriple t = euler_decompose(pauli::I(), o);
        EXPECT_EQ(t.phase, Angle::zero());
        EXPECT_EQ(t.alpha, Angle::zero());
        EXPECT_EQ(t.beta, Angle::zero());
        EXPECT_EQ(t.gamma, Angle::zero());
    }
}

TEST(rotations, euler_round_trip_all_orders) {
    Rng rng(2026);
    for (EulerOrder o : kAllEulerOrders) {
        for (int k = 0; k < 200; k++) {
            Matrix u = random_unitary(1, rng);
            EulerTriple t = euler_decompose(u, o);
            EXPECT_LT(max_abs_diff(t.matrix(), u), 1e-10) << euler_order_name(o);
            EXPECT_GE(t.beta.radians(), 0);
            EXPECT_LE(t.beta.radians(), kPi);
            EXPECT_GT(t.alpha.radians(), -kPi);
            EXPECT_LE(t.alpha.radians(), kPi);
            EXPECT_GT(t.gamma.radians(), -kPi);
            EXPECT_LE(t.gamma.radians(), kPi);
        }
        for (NamedGate g : kAllNamedGates) {
            EXPECT_LT(max_abs_diff(euler_decompose(named_gate_matrix(g), o).matrix(), named_gate_matrix(g)), 1e-10);
        }
    }
}

TEST(rotations, euler_degenerate_beta) {
    Rng rng(8);
    for (EulerOrder o : kAllEulerOrders) {
        auto [outer, middle] = euler_axes(o);
        for (double beta : {0.0, kPi}) {
            for (int k = 0; k < 10; k++) {
                double a = random_angle(rng);
                double g = random_angle(rng);
                double ph = random_angle(rng);
                Matrix u = std::exp(Complex(0, ph)) * rotation_matrix(outer, a) * rotation_matrix(middle, beta) *
                           rotation_matrix(outer, g);
                EulerTriple t = euler_decompose(u, o);
                EXPECT_LT(max_abs_diff(t.matrix(), u), 1e-10);
                EXPECT_EQ(t.alpha, Angle::zero());
            }
        }
    }
}

TEST(rotations, euler_rejects_non_unitary) {
    Matrix m = pauli::I() * 1.01;
    EXPECT_THROW(euler_decompose(m, EulerOrder::kZYZ), std::invalid_argument);
    EXPECT_THROW(euler_decompose(Matrix::Identity(4, 4), EulerOrder::kZYZ), std::invalid_argument);
}

TEST(rotations, named_gate_table_residuals) {
    // Frozen from an independent numpy evaluation of the tabulated entries.
    for (NamedGate g : kAllNamedGates) {
        TableEntry e = named_gate_table(g, EulerOrder::kZYZ);
        EXPECT_TRUE(e.phase_exact()) << "zyz " << named_gate_name(g);
    }
    for (NamedGate g : kAllNamedGates) {
        TableEntry e = named_gate_table(g, EulerOrder::kYXY);
        EXPECT_TRUE(e.matches_up_to_phase()) << "yxy " << named_gate_name(g);
        if (g == NamedGate::kH) {
            EXPECT_LT(std::abs(e.residual_phase - Complex(0, -1)), 1e-12);
        } else {
            EXPECT_TRUE(e.phase_exact()) << "yxy " << named_gate_name(g);
        }
    }
    for (NamedGate g : kAllNamedGates) {
        TableEntry e = named_gate_table(g, EulerOrder::kZXZ);
        if (g == NamedGate::kY) {
            EXPECT_FALSE(e.matches_up_to_phase());
            EXPECT_NEAR(phase_insensitive_distance(named_gate_matrix(g), e.triple.matrix()), e.deviation, 1e-12);
            EXPECT_GT(e.deviation, 1.0);
            EXPECT_NEAR(std::arg(e.residual_phase), kPi / 4, 1e-12);
        } else {
            EXPECT_TRUE(e.phase_exact()) << "zxz " << named_gate_name(g);
        }
    }
    EXPECT_THROW(named_gate_table(NamedGate::kH, EulerOrder::kXYX), std::invalid_argument);
}

TEST(rotations, abc_identities) {
    Rng rng(77);
    for (int k = 0; k < 100; k++) {
        Matrix u = random_unitary(1, rng);
        ABCDecomposition d = abc_decompose(u);
        EXPECT_LT(max_abs_diff(d.a() * d.b() * d.c(), pauli::I()), 1e-10);
        EXPECT_LT(max_abs_diff(d.reconstruct(), u), 1e-10);
    }
}

TEST(rotations, abc_for_phase_exact) {
    for (int k = 1; k <= 6; k++) {
        Angle phi = Angle::pi(2, int64_t{1} << k);
        ABCDecomposition d = abc_for_phase(phi);
        EXPECT_EQ(d.alpha, Angle::pi(1, int64_t{1} << k));
        Matrix target = pauli::I();
        target(1, 1) = std::exp(Complex(0, phi.radians()));
        EXPECT_LT(max_abs_diff(d.reconstruct(), target), 1e-12);
        EXPECT_LT(max_abs_diff(d.a() * d.b() * d.c(), pauli::I()), 1e-12);
        // Controlled-U from the ABC circuit, control is wire 0.
        Matrix cx = Matrix::Identity(4, 4);
        cx.block(2, 2, 2, 2) = pauli::X();
        Matrix ctrl_phase = Matrix::Identity(2, 2);
        ctrl_phase(1, 1) = std::exp(Complex(0, d.alpha.radians()));
        Matrix circuit = kron(ctrl_phase, d.a()) * cx * kron(pauli::I(), d.b()) * cx * kron(pauli::I(), d.c());
        Matrix expect = Matrix::Identity(4, 4);
        expect(3, 3) = std::exp(Complex(0, phi.radians()));
        EXPECT_LT(max_abs_diff(circuit, expect), 1e-12) << k;
        ABCDecomposition numeric = abc_decompose(target);
        EXPECT_LT(std::abs(numeric.alpha.radians() - d.alpha.radians()), 1e-12);
    }
}
