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

// Gate teleportation. Wiring: a fresh ancilla pair (a1, a2) is appended after the
// existing wires; the rotation acts on the data wire, the data wire and a1 are
// Bell-measured, and a2 carries the output. The output is moved back into the data
// wire's position so wire indices are stable across steps.

#include <array>
#include <optional>

#include "gtubqc/pauli_frame.h"
#include "gtubqc/qcore.h"
#include "gtubqc/rng.h"
#include "gtubqc/rotations.h"

namespace gtubqc {

struct TeleportStep {
    BellCode ancilla_code;
    BellCode outcome;
    /// (s1, s2) = ancilla_code xor outcome.
    BellCode byproduct;
    /// Output picks up (-1)^{ancilla.b2 * outcome.b1} on top of X^s1 Z^s2.
    bool sign;
    RotationInstruction rotation;
};

/// (s1, s2) = ancilla xor outcome.
BellCode byproduct_of(BellCode ancilla, BellCode outcome);
/// Sign exponent of the by-product: ancilla.b2 & outcome.b1.
bool byproduct_sign(BellCode ancilla, BellCode outcome);

/// state (x) bell_state(code); the pair occupies the two new trailing wires.
StateVector append_bell_pair(const StateVector &state, BellCode code);

/// Reorders wires so that wire `from` ends up at index `to`, others keep relative order.
StateVector move_wire(const StateVector &state, size_t from, size_t to);

struct TeleportResult {
    TeleportStep step;
    StateVector state;
};

/// Teleports `rotation` onto `data`: output = (-1)^sign X^s1 Z^s2 R |psi>, exactly.
TeleportResult teleport_rotation(
    const StateVector &state, size_t data, BellCode ancilla_code, const RotationGate &rotation, Rng &rng);

/// As teleport_rotation with the Bell outcome fixed; the post-state is renormalized by a
/// positive factor, so its phase is exact. Throws if the outcome has probability 0.
TeleportResult teleport_rotation_with_outcome(
    const StateVector &state, size_t data, BellCode ancilla_code, const RotationGate &rotation, BellCode outcome);

struct ControlledTeleportResult {
    /// steps[0] on the control wire, steps[1] on the target wire.
    std::array<TeleportStep, 2> steps;
    StateVector state;
};

/// Teleports C-R_axis(angle) onto (control, target) with one ancilla pair per wire.
ControlledTeleportResult teleport_controlled(const StateVector &state,
                                             size_t control,
                                             size_t target,
                                             std::array<BellCode, 2> ancilla_codes,
                                             Axis axis,
                                             const Angle &angle,
                                             Rng &rng,
                                             std::array<std::optional<BellCode>, 2> forced = {});

}  // namespace gtubqc
