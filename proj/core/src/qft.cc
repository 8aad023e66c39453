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

#include "gtubqc/qft.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace gtubqc;

QftCircuit gtubqc::qft_circuit(size_t n) {
    if (n < 1 || n > kMaxQftQubits) {
        throw std::invalid_argument("QFT size must be in 1.." + std::to_string(kMaxQftQubits) + ".");
    }
    QftCircuit c{n, {}};
    for (size_t j = 0; j < n; j++) {
        c.gates.push_back({"H", {j}, {}, {}});
        for (size_t m = j + 1; m < n; m++) {
            c.gates.push_back({"CPHASE", {m, j}, {}, static_cast<int>(m - j + 1)});
        }
    }
    for (size_t i = 0; i < n / 2; i++) {
        c.gates.push_back({"SWAP", {i, n - 1 - i}, {}, {}});
    }
    return c;
}

Matrix gtubqc::dft_matrix(size_t n) {
    auto d = static_cast<Eigen::Index>(size_t{1} << n);
    Matrix m(d, d);
    double norm = 1 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < d; j++) {
        for (Eigen::Index k = 0; k < d; k++) {
            double angle = 2 * std::numbers::pi * static_cast<double>((j * k) % d) / static_cast<double>(d);
            m(j, k) = norm * std::exp(Complex(0, angle));
        }
    }
    return m;
}

AngleMode gtubqc::qft_mode(size_t n) {
    return n <= 2 ? AngleMode::kGrid : AngleMode::kContinuous;
}

ComputationPlan gtubqc::decompose_qft_gate(const Gate &gate, EulerOrder order) {
    if (gate.name != "H" && gate.name != "CPHASE" && gate.name != "SWAP") {
        throw PlanError("Not a QFT gate: " + gate.name);
    }
    std::vector<size_t> local(gate.wires.size());
    for (size_t i = 0; i < local.size(); i++) {
        local[i] = i;
    }
    Gate g = gate;
    g.wires = local;
    AngleMode mode = gate.name == "CPHASE" && gate.k.value_or(1) > 2 ? AngleMode::kContinuous : AngleMode::kGrid;
    std::vector<Gate> one{g};
    return compile_gates(one, local.size(), CompileOptions{mode, order});
}

BlindQftResult gtubqc::run_blind_qft(size_t n, const StateVector &input, const SessionConfig &config) {
    QftCircuit c = qft_circuit(n);
    if (input.num_qubits() != n) {
        throw std::invalid_argument("QFT input must have " + std::to_string(n) + " qubits.");
    }
    BlindQftResult r;
    r.plan = compile_gates(c.gates, n, CompileOptions{qft_mode(n), EulerOrder::kZYZ});
    r.run = run_computation(r.plan, input, config);
    if (r.run.output) {
        Vector want = dft_matrix(n) * input.amplitudes();
        r.fidelity = std::norm(want.dot(r.run.output->amplitudes()));
    }
    return r;
}
