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

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace gtubqc;

namespace {

size_t log2_exact(size_t n, const char *what) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument(std::string(what) + " dimension " + std::to_string(n) + " is not a power of two.");
    }
    size_t k = 0;
    while ((size_t{1} << k) < n) {
        k++;
    }
    return k;
}

size_t wire_mask(size_t num_qubits, size_t wire) {
    return size_t{1} << (num_qubits - 1 - wire);
}

void check_wires(size_t num_qubits, std::span<const size_t> wires) {
    for (size_t i = 0; i < wires.size(); i++) {
        if (wires[i] >= num_qubits) {
            throw std::invalid_argument(
                "Wire " + std::to_string(wires[i]) + " out of range for " + std::to_string(num_qubits) + " qubits.");
        }
        for (size_t j = 0; j < i; j++) {
            if (wires[i] == wires[j]) {
                throw std::invalid_argument("Duplicate wire " + std::to_string(wires[i]) + ".");
            }
        }
    }
}

double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

BellCode BellCode::from_index(int index) {
    if (index < 0 || index > 3) {
        throw std::invalid_argument("Bell code index out of range: " + std::to_string(index));
    }
    return {static_cast<uint8_t>(index >> 1), static_cast<uint8_t>(index & 1)};
}

BellCode BellCode::parse(std::string_view text) {
    if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1')) {
        throw std::invalid_argument("Malformed Bell code '" + std::string(text) + "'.");
    }
    return {static_cast<uint8_t>(text[0] - '0'), static_cast<uint8_t>(text[1] - '0')};
}

std::string BellCode::to_string() const {
    return {static_cast<char>('0' + b1), static_cast<char>('0' + b2)};
}

std::array<BellCode, 4> BellCode::all() {
    return {BellCode{0, 0}, BellCode{0, 1}, BellCode{1, 0}, BellCode{1, 1}};
}

StateVector::StateVector(size_t num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::basis(size_t num_qubits, uint64_t index) {
    size_t dim = size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::invalid_argument("Basis index out of range.");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1;
    return {num_qubits, std::move(v)};
}

StateVector StateVector::from_amplitudes(Vector amplitudes, double tolerance) {
    size_t n = log2_exact(static_cast<size_t>(amplitudes.size()), "State");
    double norm2 = amplitudes.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1) > tolerance) {
        throw std::invalid_argument("State is not normalized: |psi|^2 = " + std::to_string(norm2));
    }
    return {n, std::move(amplitudes)};
}

StateVector StateVector::unnormalized(Vector amplitudes) {
    size_t n = log2_exact(static_cast<size_t>(amplitudes.size()), "State");
    return {n, std::move(amplitudes)};
}

bool StateVector::is_normalized(double tolerance) const {
    return std::abs(amplitudes_.squaredNorm() - 1) <= tolerance;
}

StateVector StateVector::tensor(const StateVector &other) const {
    Vector v(static_cast<Eigen::Index>(dim() * other.dim()));
    for (Eigen::Index i = 0; i < amplitudes_.size(); i++) {
        v.segment(i * other.amplitudes_.size(), other.amplitudes_.size()) = amplitudes_[i] * other.amplitudes_;
    }
    return {num_qubits_ + other.num_qubits_, std::move(v)};
}

StateVector StateVector::normalized() const {
    double n = amplitudes_.norm();
    if (n == 0) {
        throw std::invalid_argument("Cannot normalize the zero vector.");
    }
    return {num_qubits_, amplitudes_ / n};
}

StateVector StateVector::scaled(Complex factor) const {
    return {num_qubits_, amplitudes_ * factor};
}

Unitary::Unitary(size_t num_qubits, Matrix matrix) : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
}

double gtubqc::unitarity_residual(const Matrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

Unitary Unitary::from_matrix(Matrix matrix, double tolerance) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("Unitary must be square.");
    }
    size_t n = log2_exact(static_cast<size_t>(matrix.rows()), "Unitary");
    double r = unitarity_residual(matrix);
    if (!(r <= tolerance)) {
        throw std::invalid_argument("Matrix is not unitary: max|U^dagger U - I| = " + std::to_string(r));
    }
    return {n, std::move(matrix)};
}

Unitary Unitary::identity(size_t num_qubits) {
    auto d = static_cast<Eigen::Index>(size_t{1} << num_qubits);
    return {num_qubits, Matrix::Identity(d, d)};
}

Unitary Unitary::adjoint() const {
    return {num_qubits_, matrix_.adjoint()};
}

Unitary Unitary::operator*(const Unitary &rhs) const {
    if (dim() != rhs.dim()) {
        throw std::invalid_argument("Unitary product dimension mismatch.");
    }
    return {num_qubits_, matrix_ * rhs.matrix_};
}

Unitary Unitary::tensor(const Unitary &rhs) const {
    return {num_qubits_ + rhs.num_qubits_, kron(matrix_, rhs.matrix_)};
}

DensityMatrix::DensityMatrix(size_t num_qubits, Matrix matrix) : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
}

DensityMatrix DensityMatrix::from_matrix(Matrix matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("Density matrix must be square.");
    }
    size_t n = log2_exact(static_cast<size_t>(matrix.rows()), "Density matrix");
    double herm = max_abs(matrix - matrix.adjoint());
    if (!(herm <= tol::kNumerical)) {
        throw std::invalid_argument("Density matrix is not Hermitian (deviation " + std::to_string(herm) + ").");
    }
    Complex tr = matrix.trace();
    if (!(std::abs(tr - Complex(1)) <= tol::kNumerical)) {
        throw std::invalid_argument("Density matrix trace is " + std::to_string(tr.real()) + ", not 1.");
    }
    DensityMatrix rho(n, std::move(matrix));
    double min_eig = rho.eigenvalues().minCoeff();
    if (min_eig < -tol::kStructural) {
        throw std::invalid_argument("Density matrix is not positive semidefinite (eigenvalue " +
                                    std::to_string(min_eig) + ").");
    }
    return rho;
}

DensityMatrix DensityMatrix::projector(const StateVector &state) {
    const Vector &v = state.amplitudes();
    return {state.num_qubits(), v * v.adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(size_t num_qubits) {
    auto d = static_cast<Eigen::Index>(size_t{1} << num_qubits);
    return {num_qubits, Matrix::Identity(d, d) / static_cast<double>(d)};
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Matrix h = (matrix_ + matrix_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Matrix pauli::I() {
    return Matrix::Identity(2, 2);
}

Matrix pauli::X() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli::Y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli::Z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix gtubqc::kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector gtubqc::bell_state(BellCode code) {
    const double h = 1 / std::sqrt(2.0);
    Vector v = Vector::Zero(4);
    // (I (x) X^b1 Z^b2)(|00> + |11>)/sqrt2: the second qubit picks up the flip and the sign.
    double sign = code.b2 ? -1 : 1;
    v[0 ^ code.b1] = h;
    v[3 ^ code.b1] = sign * h;
    return StateVector::from_amplitudes(std::move(v));
}

StateVector gtubqc::apply_unitary(const StateVector &state, const Unitary &u, std::span<const size_t> targets) {
    size_t n = state.num_qubits();
    check_wires(n, targets);
    if (u.num_qubits() != targets.size()) {
        throw std::invalid_argument("Unitary acts on " + std::to_string(u.num_qubits()) + " qubits but " +
                                    std::to_string(targets.size()) + " targets were given.");
    }
    size_t k = targets.size();
    size_t sub = size_t{1} << k;
    std::vector<size_t> offsets(sub, 0);
    size_t target_mask = 0;
    for (size_t t = 0; t < k; t++) {
        target_mask |= wire_mask(n, targets[t]);
    }
    for (size_t j = 0; j < sub; j++) {
        size_t off = 0;
        for (size_t t = 0; t < k; t++) {
            if ((j >> (k - 1 - t)) & 1) {
                off |= wire_mask(n, targets[t]);
            }
        }
        offsets[j] = off;
    }
    const Vector &in = state.amplitudes();
    Vector out = in;
    const Matrix &m = u.matrix();
    Vector gathered(static_cast<Eigen::Index>(sub));
    for (size_t base = 0; base < state.dim(); base++) {
        if (base & target_mask) {
            continue;
        }
        for (size_t j = 0; j < sub; j++) {
            gathered[static_cast<Eigen::Index>(j)] = in[static_cast<Eigen::Index>(base | offsets[j])];
        }
        Vector result = m * gathered;
        for (size_t j = 0; j < sub; j++) {
            out[static_cast<Eigen::Index>(base | offsets[j])] = result[static_cast<Eigen::Index>(j)];
        }
    }
    return StateVector::unnormalized(std::move(out));
}

StateVector gtubqc::apply_unitary(const StateVector &state, const Unitary &u, std::initializer_list<size_t> targets) {
    return apply_unitary(state, u, std::span<const size_t>(targets.begin(), targets.size()));
}

Vector gtubqc::project_bell(const StateVector &state, size_t a, size_t b, BellCode code) {
    size_t n = state.num_qubits();
    if (n < 2) {
        throw std::invalid_argument("Bell measurement needs at least two qubits.");
    }
    std::array<size_t, 2> pair{a, b};
    check_wires(n, pair);
    const Vector bell = bell_state(code).amplitudes();
    size_t ma = wire_mask(n, a);
    size_t mb = wire_mask(n, b);
    size_t rest_dim = size_t{1} << (n - 2);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(rest_dim));
    size_t full = 0;
    size_t r = 0;
    for (full = 0; full < state.dim(); full++) {
        if (full & (ma | mb)) {
            continue;
        }
        Complex acc = 0;
        for (size_t x = 0; x < 2; x++) {
            for (size_t y = 0; y < 2; y++) {
                size_t idx = full | (x ? ma : 0) | (y ? mb : 0);
                acc += std::conj(bell[static_cast<Eigen::Index>(2 * x + y)]) * state[idx];
            }
        }
        out[static_cast<Eigen::Index>(r++)] = acc;
    }
    return out;
}

std::array<double, 4> gtubqc::bell_probabilities(const StateVector &state, size_t a, size_t b) {
    std::array<double, 4> p{};
    for (BellCode c : BellCode::all()) {
        p[static_cast<size_t>(c.index())] = project_bell(state, a, b, c).squaredNorm();
    }
    return p;
}

BellMeasurement gtubqc::bell_measure(const StateVector &state, size_t a, size_t b, Rng &rng) {
    if (!state.is_normalized(tol::kStructural)) {
        throw std::invalid_argument("Cannot measure an unnormalized state (|psi|^2 = " +
                                    std::to_string(state.amplitudes().squaredNorm()) + ").");
    }
    std::array<double, 4> p = bell_probabilities(state, a, b);
    double u = rng.uniform();
    double acc = 0;
    int chosen = -1;
    int last_nonzero = 0;
    for (int i = 0; i < 4; i++) {
        if (p[static_cast<size_t>(i)] > 0) {
            last_nonzero = i;
        }
    }
    for (int i = 0; i < 4; i++) {
        acc += p[static_cast<size_t>(i)];
        if (u < acc && p[static_cast<size_t>(i)] > 0) {
            chosen = i;
            break;
        }
    }
    if (chosen < 0) {
        chosen = last_nonzero;
    }
    return bell_measure_as(state, a, b, BellCode::from_index(chosen));
}

BellMeasurement gtubqc::bell_measure_as(const StateVector &state, size_t a, size_t b, BellCode outcome) {
    Vector post = project_bell(state, a, b, outcome);
    double prob = post.squaredNorm();
    if (prob <= tol::kNumerical * tol::kNumerical) {
        throw std::invalid_argument("Bell outcome " + outcome.to_string() + " has probability 0.");
    }
    std::vector<size_t> survivors;
    for (size_t w = 0; w < state.num_qubits(); w++) {
        if (w != a && w != b) {
            survivors.push_back(w);
        }
    }
    return {outcome, prob, StateVector::unnormalized(post / std::sqrt(prob)), std::move(survivors)};
}

DensityMatrix gtubqc::partial_trace(const DensityMatrix &rho, std::span<const size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace needs a non-empty keep list.");
    }
    size_t n = rho.num_qubits();
    check_wires(n, keep);
    size_t k = keep.size();
    size_t keep_mask = 0;
    for (size_t w : keep) {
        keep_mask |= wire_mask(n, w);
    }
    auto compress = [&](size_t full) {
        size_t out = 0;
        for (size_t t = 0; t < k; t++) {
            if (full & wire_mask(n, keep[t])) {
                out |= size_t{1} << (k - 1 - t);
            }
        }
        return out;
    };
    auto d = static_cast<Eigen::Index>(size_t{1} << k);
    Matrix out = Matrix::Zero(d, d);
    const Matrix &m = rho.matrix();
    for (size_t i = 0; i < rho.dim(); i++) {
        size_t ci = compress(i);
        for (size_t j = 0; j < rho.dim(); j++) {
            if ((i & ~keep_mask) != (j & ~keep_mask)) {
                continue;
            }
            out(static_cast<Eigen::Index>(ci), static_cast<Eigen::Index>(compress(j))) +=
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix gtubqc::partial_trace(const DensityMatrix &rho, std::initializer_list<size_t> keep) {
    return partial_trace(rho, std::span<const size_t>(keep.begin(), keep.size()));
}

std::optional<Complex> gtubqc::global_phase_between(const Vector &a, const Vector &b) {
    if (b.size() == 0) {
        return Complex(1);
    }
    Eigen::Index k = 0;
    b.cwiseAbs().maxCoeff(&k);
    if (std::abs(b[k]) == 0) {
        return Complex(1);
    }
    Complex ratio = a[k] / b[k];
    if (std::abs(ratio) == 0) {
        return std::nullopt;
    }
    return ratio / std::abs(ratio);
}

double gtubqc::phase_insensitive_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("Phase comparison dimension mismatch.");
    }
    Eigen::Map<const Vector> av(a.data(), a.size());
    Eigen::Map<const Vector> bv(b.data(), b.size());
    std::optional<Complex> c = global_phase_between(av, bv);
    if (!c) {
        return std::max(max_abs(a), max_abs(b));
    }
    return max_abs(a - *c * b);
}

bool gtubqc::equal_up_to_global_phase(const Matrix &a, const Matrix &b, double tolerance) {
    return phase_insensitive_distance(a, b) <= tolerance;
}

bool gtubqc::equal_up_to_global_phase(const StateVector &a, const StateVector &b, double tolerance) {
    return equal_up_to_global_phase(Matrix(a.amplitudes()), Matrix(b.amplitudes()), tolerance);
}

bool gtubqc::equal_up_to_global_phase(const Unitary &a, const Unitary &b, double tolerance) {
    return equal_up_to_global_phase(a.matrix(), b.matrix(), tolerance);
}

DensityMatrix gtubqc::average_density(std::span<const StateVector> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw std::invalid_argument("average_density needs one weight per state.");
    }
    double total = 0;
    for (double w : weights) {
        if (w < 0) {
            throw std::invalid_argument("average_density weight is negative.");
        }
        total += w;
    }
    if (std::abs(total - 1) > tol::kNumerical) {
        throw std::invalid_argument("average_density weights sum to " + std::to_string(total) + ", not 1.");
    }
    auto d = static_cast<Eigen::Index>(states[0].dim());
    Matrix acc = Matrix::Zero(d, d);
    for (size_t i = 0; i < states.size(); i++) {
        if (states[i].dim() != states[0].dim()) {
            throw std::invalid_argument("average_density states differ in dimension.");
        }
        const Vector &v = states[i].amplitudes();
        acc += weights[i] * (v * v.adjoint());
    }
    return DensityMatrix::from_matrix(std::move(acc));
}

double gtubqc::trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("trace_distance dimension mismatch.");
    }
    Matrix diff = rho.matrix() - sigma.matrix();
    diff = (diff + diff.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum() / 2;
}

double gtubqc::fidelity(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity dimension mismatch.");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

StateVector gtubqc::permute_wires(const StateVector &state, std::span<const size_t> order) {
    size_t n = state.num_qubits();
    if (order.size() != n) {
        throw std::invalid_argument("permute_wires needs a full permutation.");
    }
    check_wires(n, order);
    Vector out(static_cast<Eigen::Index>(state.dim()));
    for (size_t i = 0; i < state.dim(); i++) {
        size_t j = 0;
        for (size_t w = 0; w < n; w++) {
            if (i & wire_mask(n, order[w])) {
                j |= wire_mask(n, w);
            }
        }
        out[static_cast<Eigen::Index>(j)] = state[i];
    }
    return StateVector::unnormalized(std::move(out));
}

Matrix gtubqc::embed_unitary(const Matrix &u, std::span<const size_t> targets, size_t num_qubits) {
    Unitary uu = Unitary::from_matrix(u);
    size_t dim = size_t{1} << num_qubits;
    Matrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t col = 0; col < dim; col++) {
        out.col(static_cast<Eigen::Index>(col)) =
            apply_unitary(StateVector::basis(num_qubits, col), uu, targets).amplitudes();
    }
    return out;
}
