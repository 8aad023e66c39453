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

#include "gtubqc/qcore.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.test.h"

using namespace gtubqc;
using namespace gtubqc::testing;

namespace {

const double kH = 1 / std::sqrt(2.0);

Matrix rz_direct(double t) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(Complex(0, -t / 2));
    m(1, 1) = std::exp(Complex(0, t / 2));
    return m;
}

StateVector plus() {
    Vector v(2);
    v << kH, kH;
    return StateVector::from_amplitudes(v);
}

}  // namespace

TEST(qcore, bell_state_mapping) {
    Vector phi_plus(4);
    phi_plus << kH, 0, 0, kH;
    EXPECT_LT((bell_state({0, 0}).amplitudes() - phi_plus).norm(), 1e-15);

    Vector psi_minus(4);
    psi_minus << 0, kH, -kH, 0;
    EXPECT_LT((bell_state({1, 1}).amplitudes() - psi_minus).norm(), 1e-15);

    Vector psi_plus(4);
    psi_plus << 0, kH, kH, 0;
    EXPECT_LT((bell_state({1, 0}).amplitudes() - psi_plus).norm(), 1e-15);

    Vector phi_minus(4);
    phi_minus << kH, 0, 0, -kH;
    EXPECT_LT((bell_state({0, 1}).amplitudes() - phi_minus).norm(), 1e-15);
}

TEST(qcore, bell_basis_is_orthonormal) {
    for (BellCode a : BellCode::all()) {
        EXPECT_TRUE(bell_state(a).is_normalized());
        for (BellCode b : BellCode::all()) {
            Complex ip = bell_state(a).amplitudes().dot(bell_state(b).amplitudes());
            EXPECT_NEAR(std::abs(ip), a == b ? 1.0 : 0.0, 1e-15) << a.to_string() << " " << b.to_string();
        }
    }
}

TEST(qcore, bell_code_parse_and_xor) {
    EXPECT_EQ(BellCode::parse("01"), (BellCode{0, 1}));
    EXPECT_EQ(BellCode::parse("10").to_string(), "10");
    EXPECT_EQ((BellCode{1, 0} ^ BellCode{1, 1}), (BellCode{0, 1}));
    EXPECT_THROW(BellCode::parse("2"), std::invalid_argument);
    EXPECT_THROW(BellCode::parse("012"), std::invalid_argument);
    EXPECT_THROW(BellCode::from_index(4), std::invalid_argument);
}

TEST(qcore, apply_identity_and_bit_flip) {
    Rng rng(1);
    StateVector s = random_state(3, rng);
    StateVector same = apply_unitary(s, Unitary::identity(2), {0, 2});
    EXPECT_LT((same.amplitudes() - s.amplitudes()).norm(), 1e-15);

    StateVector flipped = apply_unitary(StateVector::basis(2, 0b00), Unitary::from_matrix(pauli::X()), {0});
    EXPECT_NEAR(std::abs(flipped[0b10] - Complex(1)), 0, 1e-15);
}

TEST(qcore, apply_rz_quarter_turn_to_one) {
    // Rz(pi/4)|1> = e^{i pi/8}|1>.
    StateVector out = apply_unitary(StateVector::basis(1, 1), Unitary::from_matrix(rz_direct(std::numbers::pi / 4)), {0});
    EXPECT_NEAR(std::abs(out[1] - std::exp(Complex(0, std::numbers::pi / 8))), 0, 1e-15);
    EXPECT_NEAR(std::abs(out[0]), 0, 1e-15);
}

TEST(qcore, apply_unitary_matches_kron_oracle) {
    Rng rng(2);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = random_state(3, rng);
        Matrix u = random_unitary(2, rng);
        // Targets (2, 0): build the full operator by permuting to (2, 0, 1) order.
        StateVector direct = apply_unitary(s, Unitary::from_matrix(u), {2, 0});
        std::array<size_t, 3> perm{2, 0, 1};
        StateVector permuted = permute_wires(s, perm);
        Vector full = kron(u, pauli::I()) * permuted.amplitudes();
        std::array<size_t, 3> inverse{1, 2, 0};
        StateVector back = permute_wires(StateVector::unnormalized(full), inverse);
        EXPECT_LT((back.amplitudes() - direct.amplitudes()).norm(), 1e-12);
    }
}

TEST(qcore, apply_unitary_errors) {
    StateVector s = StateVector::basis(2, 0);
    EXPECT_THROW(apply_unitary(s, Unitary::identity(2), {0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(s, Unitary::identity(2), {1, 1}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(s, Unitary::identity(1), {2}), std::invalid_argument);
}

TEST(qcore, unitary_validation) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = 1.1;
    EXPECT_THROW(Unitary::from_matrix(m), std::invalid_argument);
    EXPECT_THROW(Unitary::from_matrix(Matrix::Identity(3, 3)), std::invalid_argument);
    EXPECT_NO_THROW(Unitary::from_matrix(pauli::Y()));
}

TEST(qcore, norm_preserved_for_random_unitaries) {
    Rng rng(3);
    for (int trial = 0; trial < 100; trial++) {
        StateVector s = random_state(4, rng);
        Matrix u = random_unitary(2, rng);
        std::array<size_t, 2> targets{static_cast<size_t>(trial % 4), static_cast<size_t>((trial + 1 + trial / 4) % 4)};
        if (targets[0] == targets[1]) {
            targets[1] = (targets[1] + 1) % 4;
        }
        StateVector out = apply_unitary(s, Unitary::from_matrix(u), targets);
        EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    }
}

TEST(qcore, bell_measure_eigenstate_is_deterministic) {
    Rng rng(4);
    StateVector s = bell_state({0, 1}).tensor(StateVector::basis(1, 1));
    for (int i = 0; i < 20; i++) {
        BellMeasurement m = bell_measure(s, 0, 1, rng);
        EXPECT_EQ(m.outcome, (BellCode{0, 1}));
        EXPECT_NEAR(m.probability, 1.0, 1e-12);
        EXPECT_EQ(m.survivors, std::vector<size_t>{2});
        EXPECT_NEAR(std::abs(m.state[1]), 1.0, 1e-12);
    }
}

TEST(qcore, bell_probabilities_of_teleport_input_are_uniform) {
    Rng rng(5);
    for (int trial = 0; trial < 10; trial++) {
        StateVector psi = apply_unitary(random_state(1, rng), Unitary::from_matrix(rz_direct(random_angle(rng))), {0});
        StateVector full = psi.tensor(bell_state({0, 0}));
        std::array<double, 4> p = bell_probabilities(full, 0, 1);
        for (double v : p) {
            EXPECT_NEAR(v, 0.25, 1e-12);
        }
    }
}

TEST(qcore, bell_probabilities_sum_to_one_brute_force) {
    // Oracle: explicit 4x4 Bell projectors embedded with kron, independent of project_bell.
    Rng rng(6);
    for (int trial = 0; trial < 100; trial++) {
        StateVector s = random_state(3, rng);
        std::array<double, 4> p = bell_probabilities(s, 0, 1);
        double total = 0;
        for (BellCode c : BellCode::all()) {
            Vector b = bell_state(c).amplitudes();
            Matrix proj = kron(b * b.adjoint(), pauli::I());
            double brute = (s.amplitudes().adjoint() * proj * s.amplitudes())(0, 0).real();
            EXPECT_NEAR(p[static_cast<size_t>(c.index())], brute, 1e-12);
            total += brute;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(qcore, bell_measure_rejects_unnormalized) {
    Rng rng(7);
    Vector v = Vector::Zero(4);
    v[0] = 2;
    EXPECT_THROW(bell_measure(StateVector::unnormalized(v), 0, 1, rng), std::invalid_argument);
    EXPECT_THROW(bell_measure(StateVector::basis(1, 0), 0, 0, rng), std::invalid_argument);
    EXPECT_THROW(bell_measure(StateVector::basis(2, 0), 1, 1, rng), std::invalid_argument);
}

TEST(qcore, bell_measure_survivor_map) {
    Rng rng(8);
    StateVector s = random_state(4, rng);
    BellMeasurement m = bell_measure(s, 3, 1, rng);
    EXPECT_EQ(m.survivors, (std::vector<size_t>{0, 2}));
    EXPECT_EQ(m.state.num_qubits(), 2u);
    EXPECT_TRUE(m.state.is_normalized());
}

TEST(qcore, partial_trace_examples) {
    DensityMatrix bell = DensityMatrix::projector(bell_state({0, 0}));
    DensityMatrix reduced = partial_trace(bell, {0});
    EXPECT_LT(max_abs_diff(reduced.matrix(), pauli::I() / 2.0), 1e-15);

    DensityMatrix all = partial_trace(bell, {0, 1});
    EXPECT_LT(max_abs_diff(all.matrix(), bell.matrix()), 1e-15);

    DensityMatrix prod = DensityMatrix::projector(StateVector::basis(1, 0).tensor(plus()));
    DensityMatrix kept = partial_trace(prod, {1});
    Matrix expected = Matrix::Constant(2, 2, 0.5);
    EXPECT_LT(max_abs_diff(kept.matrix(), expected), 1e-15);

    EXPECT_THROW(partial_trace(bell, std::span<const size_t>{}), std::invalid_argument);
}

TEST(qcore, partial_trace_keep_order_permutes) {
    Rng rng(9);
    StateVector a = random_state(1, rng);
    StateVector b = random_state(1, rng);
    DensityMatrix rho = DensityMatrix::projector(a.tensor(b).tensor(random_state(1, rng)));
    DensityMatrix swapped = partial_trace(rho, {1, 0});
    DensityMatrix expected = DensityMatrix::projector(b.tensor(a));
    EXPECT_LT(max_abs_diff(swapped.matrix(), expected.matrix()), 1e-12);
}

TEST(qcore, partial_trace_preserves_trace_and_positivity) {
    Rng rng(10);
    for (int trial = 0; trial < 50; trial++) {
        DensityMatrix rho = DensityMatrix::projector(random_state(4, rng));
        DensityMatrix red = partial_trace(rho, {static_cast<size_t>(trial % 4), static_cast<size_t>((trial + 2) % 4)});
        EXPECT_NEAR(red.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_GE(red.eigenvalues().minCoeff(), -1e-10);
    }
}

TEST(qcore, equal_up_to_global_phase_examples) {
    StateVector zero = StateVector::basis(1, 0);
    StateVector one = StateVector::basis(1, 1);
    EXPECT_TRUE(equal_up_to_global_phase(zero, zero.scaled(Complex(0, 1)), 1e-12));
    EXPECT_FALSE(equal_up_to_global_phase(zero, one, 1e-12));
}

TEST(qcore, equal_up_to_global_phase_properties) {
    Rng rng(11);
    for (int trial = 0; trial < 50; trial++) {
        StateVector a = random_state(2, rng);
        StateVector b = random_state(2, rng);
        Complex c = std::exp(Complex(0, random_angle(rng)));
        EXPECT_TRUE(equal_up_to_global_phase(a, a, 1e-12));
        EXPECT_TRUE(equal_up_to_global_phase(a, a.scaled(c), 1e-12));
        EXPECT_TRUE(equal_up_to_global_phase(a.scaled(c), a, 1e-12));
        bool ab = equal_up_to_global_phase(a, b, 1e-12);
        EXPECT_EQ(ab, equal_up_to_global_phase(b, a, 1e-12));
        EXPECT_EQ(ab, equal_up_to_global_phase(a.scaled(c), b, 1e-12));
        EXPECT_FALSE(ab);
    }
}

TEST(qcore, average_density_examples) {
    std::vector<StateVector> one{plus()};
    std::vector<double> w1{1.0};
    EXPECT_LT(max_abs_diff(average_density(one, w1).matrix(), DensityMatrix::projector(plus()).matrix()), 1e-15);

    std::vector<StateVector> zo{StateVector::basis(1, 0), StateVector::basis(1, 1)};
    std::vector<double> half{0.5, 0.5};
    EXPECT_LT(max_abs_diff(average_density(zo, half).matrix(), pauli::I() / 2.0), 1e-15);

    std::vector<double> neg{1.5, -0.5};
    EXPECT_THROW(average_density(zo, neg), std::invalid_argument);
    std::vector<double> bad{0.5, 0.4};
    EXPECT_THROW(average_density(zo, bad), std::invalid_argument);
}

TEST(qcore, sixteen_pauli_pads_give_maximally_mixed) {
    Rng rng(12);
    std::array<Matrix, 2> xs{pauli::I(), pauli::X()};
    std::array<Matrix, 2> zs{pauli::I(), pauli::Z()};
    for (int trial = 0; trial < 20; trial++) {
        StateVector psi = random_state(2, rng);
        std::vector<StateVector> padded;
        for (int j = 0; j < 2; j++) {
            for (int k = 0; k < 2; k++) {
                for (int l = 0; l < 2; l++) {
                    for (int m = 0; m < 2; m++) {
                        Matrix pad = kron(zs[k] * xs[j], zs[l] * xs[m]);
                        padded.push_back(StateVector::from_amplitudes(pad * psi.amplitudes()));
                    }
                }
            }
        }
        std::vector<double> w(16, 1.0 / 16);
        DensityMatrix avg = average_density(padded, w);
        EXPECT_LT(max_abs_diff(avg.matrix(), Matrix::Identity(4, 4) / 4.0), 1e-12);
    }
}

TEST(qcore, density_matrix_validation) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(neg), std::invalid_argument);
    Matrix nonherm(2, 2);
    nonherm << 0.5, 0.1, 0, 0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(nonherm), std::invalid_argument);
}

TEST(qcore, trace_distance_and_fidelity) {
    DensityMatrix zero = DensityMatrix::projector(StateVector::basis(1, 0));
    DensityMatrix one = DensityMatrix::projector(StateVector::basis(1, 1));
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(zero, DensityMatrix::maximally_mixed(1)), 0.5, 1e-15);
    EXPECT_NEAR(fidelity(plus(), StateVector::basis(1, 0)), 0.5, 1e-15);
}
