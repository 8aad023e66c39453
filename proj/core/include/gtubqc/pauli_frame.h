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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtubqc/angle.h"
#include "gtubqc/qcore.h"
#include "gtubqc/rotations.h"

namespace gtubqc {

/// Exponent r in (-1)^r.
struct SignBit {
    bool value = false;

    bool operator==(const SignBit &other) const = default;
};

/// A rotation to be executed blindly: R_axis(angle) on `wire`, controlled by `control` if set.
struct RotationInstruction {
    size_t wire;
    Axis axis;
    Angle angle;
    std::optional<size_t> control;

    bool operator==(const RotationInstruction &other) const = default;
};

/// X^x Z^z as a pair of exponent bits.
struct PauliBits {
    uint8_t x = 0;
    uint8_t z = 0;

    bool operator==(const PauliBits &other) const = default;
};

/// R_axis(pi) = i^quarter_turns * X^x Z^z.
struct PiRotationPauli {
    PauliBits pauli;
    int quarter_turns;
};
PiRotationPauli pi_rotation_pauli(Axis axis);

/// Tracks actual = i^q * (X^{x_0} Z^{z_0} (x) ... (x) X^{x_{n-1}} Z^{z_{n-1}}) * ideal.
class PauliFrame {
   public:
    PauliFrame() = default;
    explicit PauliFrame(size_t num_wires);

    size_t num_wires() const {
        return wires_.size();
    }
    PauliBits at(size_t wire) const;
    void set(size_t wire, PauliBits bits);
    /// Quarter turns in [0, 4).
    int phase_quarter_turns() const {
        return quarter_turns_;
    }
    void add_phase_quarter_turns(int quarter_turns);

    /// Left multiplication by a new by-product: F <- X^s1 Z^s2 F on `wire`.
    void merge_byproduct(size_t wire, bool s1, bool s2);
    /// Right multiplication: F <- F X^a Z^b on `wire`.
    void absorb_right(size_t wire, bool a, bool b);

    /// i^q * (x) X^x Z^z over all wires (wire 0 most significant).
    Matrix matrix() const;
    std::string to_string() const;

    bool operator==(const PauliFrame &other) const = default;

   private:
    void check_wire(size_t wire) const;

    std::vector<PauliBits> wires_;
    int quarter_turns_ = 0;
};

/// Exponent of the sign flip needed so that R_axis((-1)^r theta) F = F R_axis(theta):
/// X -> z, Z -> x, Y -> x xor z. Throws std::invalid_argument on an unknown wire.
SignBit adaptive_sign(const PauliFrame &frame, size_t wire, Axis axis);

/// Functional form of PauliFrame::merge_byproduct.
PauliFrame merge_byproduct(PauliFrame frame, size_t wire, bool s1, bool s2);

/// i^q times the tensor product of the listed wires' Paulis (in listed order).
Unitary frame_as_unitary(const PauliFrame &frame, std::span<const size_t> wires);
Unitary frame_as_unitary(const PauliFrame &frame);

struct ControlledPush {
    /// Sign to apply to the C-Rz angle: x_control xor x_target.
    SignBit sign;
    /// Uncontrolled rotations to schedule next (ideal angles; encrypted like any rotation).
    std::vector<RotationInstruction> compensation;
};

/// Propagates an ideal C-Rz(angle) through the frame:
/// C-Rz((-1)^sign angle) F = F Rz_t(-angle)^{x_c} C-Rz(angle), so when X sits on the
/// control a compensating Rz(angle) on the target follows.
/// Throws std::invalid_argument for axes other than Z or unknown wires.
ControlledPush push_through_controlled(
    const PauliFrame &frame, size_t control, size_t target, Axis axis, const Angle &angle);

}  // namespace gtubqc
