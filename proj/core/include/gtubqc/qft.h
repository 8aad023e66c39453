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

// Quantum Fourier transform: |x> -> 2^{-n/2} sum_y e^{2 pi i x y / 2^n} |y>, wire 0 most
// significant, with the trailing swap network included so the output is in natural order.

#include <vector>

#include "gtubqc/plan.h"
#include "gtubqc/session.h"

namespace gtubqc {

inline constexpr size_t kMaxQftQubits = 6;

struct QftCircuit {
    size_t n;
    /// H, CPHASE(k) and SWAP gates in time order.
    std::vector<Gate> gates;
};

/// Throws std::invalid_argument unless 1 <= n <= kMaxQftQubits.
QftCircuit qft_circuit(size_t n);

/// (1/sqrt N) omega^{jk}.
Matrix dft_matrix(size_t n);

/// Grid mode when every angle lies on the pi/4 grid (n <= 2), continuous otherwise.
AngleMode qft_mode(size_t n);

/// Rotation and C-Rz steps for one QFT gate (on the gate's own wires).
ComputationPlan decompose_qft_gate(const Gate &gate, EulerOrder order = EulerOrder::kZYZ);

struct BlindQftResult {
    RunResult run;
    double fidelity = 0;
    ComputationPlan plan;
};

/// Compiles and runs the QFT blindly; fidelity is against dft_matrix(n) * input.
BlindQftResult run_blind_qft(size_t n, const StateVector &input, const SessionConfig &config);

}  // namespace gtubqc
