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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gtubqc/angle.h"
#include "gtubqc/pauli_frame.h"
#include "gtubqc/qcore.h"
#include "gtubqc/rng.h"
#include "gtubqc/rotations.h"

namespace gtubqc {

/// Grid mode restricts delegated angles to {pi/4, pi/2, pi}; continuous mode allows any angle
/// (xi is still drawn from the pi/4 grid, so no uniformity claim is made).
enum class AngleMode { kGrid, kContinuous };

std::string_view angle_mode_name(AngleMode mode);
AngleMode parse_angle_mode(std::string_view text);

/// Invalid plan: unsupported gate, bad wires, or an angle the mode cannot delegate.
class PlanError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A gate of the input circuit. Names: H S T X Y Z (one wire), RX RY RZ (one wire, angle),
/// CNOT CZ CS SWAP (two wires), CPHASE (two wires, k), CRZ (two wires, angle).
struct Gate {
    std::string name;
    std::vector<size_t> wires;
    std::optional<Angle> angle;
    std::optional<int> k;
};

/// Ideal unitary of one gate on num_wires wires (reference oracle).
Matrix gate_matrix(const Gate &gate, size_t num_wires);
/// Product of the gate unitaries, first gate acting first.
Matrix circuit_matrix(std::span<const Gate> gates, size_t num_wires);

struct BlindRotation {
    size_t wire;
    Axis axis;
    Angle theta;

    bool operator==(const BlindRotation &other) const = default;
};

/// Controlled R_axis(theta); only axis Z is delegated.
struct BlindControlledRotation {
    size_t control;
    size_t target;
    Axis axis;
    Angle theta;

    bool operator==(const BlindControlledRotation &other) const = default;
};

using PlanStep = std::variant<BlindRotation, BlindControlledRotation>;

std::string step_to_string(const PlanStep &step);

/// target unitary = e^{i global_phase} * (product of steps, first step acting first).
struct ComputationPlan {
    size_t num_wires = 0;
    AngleMode mode = AngleMode::kGrid;
    std::vector<PlanStep> steps;
    Angle global_phase;
};

struct CompileOptions {
    AngleMode mode = AngleMode::kGrid;
    /// Euler order for H, S, T, X, Y, Z. Tabulated entries are used when they reproduce the gate,
    /// otherwise euler_decompose supplies the angles.
    EulerOrder order = EulerOrder::kZYZ;
};

/// Compiles gates to rotation and C-Rz steps. In grid mode every rotation is split into
/// steps of pi/4, pi/2 or pi. Throws PlanError.
ComputationPlan compile_gates(std::span<const Gate> gates, size_t num_wires, const CompileOptions &options = {});

/// Splits k*pi/4 into grid steps: returns the step angles (time order) and the number of
/// 2pi wraps folded away (each wrap is a factor -1). Throws PlanError when off the grid.
struct GridSplit {
    std::vector<Angle> steps;
    int64_t wraps;
};
GridSplit split_grid_angle(const Angle &theta);

/// e^{i global_phase} * product of steps (reference oracle, no encryption).
Matrix simulate_plan(const ComputationPlan &plan);

/// Client-side encryption of one delegated angle.
struct EncryptedAngle {
    /// Server-visible, in [0, 2pi).
    Angle theta_prime;
    bool r1;
    SignBit r2;
    /// On the pi/4 grid.
    Angle xi;
    /// theta_prime = r1 pi + (-1)^r2 theta + xi - 2pi wraps.
    int64_t wraps;
};

/// theta' = r1 pi + (-1)^{r2} theta + xi (mod 2pi) with r1 and xi uniform.
/// Throws PlanError for off-grid theta in grid mode.
EncryptedAngle encrypt_angle(const Angle &theta, Rng &rng, SignBit r2, AngleMode mode = AngleMode::kGrid);
/// Same, with the key supplied.
EncryptedAngle encrypt_angle_with_key(const Angle &theta, bool r1, SignBit r2, int xi_index,
                                      AngleMode mode = AngleMode::kGrid);

/// Uniform element of {0, pi/4, ..., 7pi/4}.
Angle random_grid_angle(Rng &rng);

/// Same-axis rotation removing the blinding offset xi.
struct Cancellation {
    Angle xi;
    int k;

    /// k pi - xi.
    Angle angle() const {
        return Angle::pi(k) - xi;
    }
};

/// Throws std::invalid_argument unless k is 1 or 2 and xi is on the pi/4 grid.
Cancellation schedule_cancellation(const Angle &xi, int k);

}  // namespace gtubqc
