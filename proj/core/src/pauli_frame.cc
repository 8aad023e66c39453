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

#include "gtubqc/pauli_frame.h"

#include <sstream>
#include <stdexcept>

using namespace gtubqc;

PiRotationPauli gtubqc::pi_rotation_pauli(Axis axis) {
    switch (axis) {
        case Axis::kX:
            return {{1, 0}, 3};
        case Axis::kY:
            return {{1, 1}, 0};
        case Axis::kZ:
            return {{0, 1}, 3};
    }
    throw std::logic_error("bad axis");
}

PauliFrame::PauliFrame(size_t num_wires) : wires_(num_wires) {
}

void PauliFrame::check_wire(size_t wire) const {
    if (wire >= wires_.size()) {
        throw std::invalid_argument("Wire " + std::to_string(wire) + " is not in a frame of " +
                                    std::to_string(wires_.size()) + " wires.");
    }
}

PauliBits PauliFrame::at(size_t wire) const {
    check_wire(wire);
    return wires_[wire];
}

void PauliFrame::set(size_t wire, PauliBits bits) {
    check_wire(wire);
    wires_[wire] = {static_cast<uint8_t>(bits.x & 1), static_cast<uint8_t>(bits.z & 1)};
}

void PauliFrame::add_phase_quarter_turns(int quarter_turns) {
    quarter_turns_ = ((quarter_turns_ + quarter_turns) % 4 + 4) % 4;
}

void PauliFrame::merge_byproduct(size_t wire, bool s1, bool s2) {
    check_wire(wire);
    PauliBits &p = wires_[wire];
    // X^s1 Z^s2 X^x Z^z = (-1)^{s2 x} X^{s1+x} Z^{s2+z}.
    if (s2 && p.x) {
        add_phase_quarter_turns(2);
    }
    p.x ^= static_cast<uint8_t>(s1);
    p.z ^= static_cast<uint8_t>(s2);
}

void PauliFrame::absorb_right(size_t wire, bool a, bool b) {
    check_wire(wire);
    PauliBits &p = wires_[wire];
    // X^x Z^z X^a Z^b = (-1)^{z a} X^{x+a} Z^{z+b}.
    if (p.z && a) {
        add_phase_quarter_turns(2);
    }
    p.x ^= static_cast<uint8_t>(a);
    p.z ^= static_cast<uint8_t>(b);
}

Matrix PauliFrame::matrix() const {
    std::vector<size_t> all(wires_.size());
    for (size_t k = 0; k < all.size(); k++) {
        all[k] = k;
    }
    return frame_as_unitary(*this, all).matrix();
}

std::string PauliFrame::to_string() const {
    std::ostringstream ss;
    static const char *kPhase[] = {"+1", "+i", "-1", "-i"};
    ss << kPhase[quarter_turns_];
    for (const PauliBits &p : wires_) {
        ss << " X" << int(p.x) << "Z" << int(p.z);
    }
    return ss.str();
}

SignBit gtubqc::adaptive_sign(const PauliFrame &frame, size_t wire, Axis axis) {
    PauliBits p = frame.at(wire);
    switch (axis) {
        case Axis::kX:
            return {p.z != 0};
        case Axis::kZ:
            return {p.x != 0};
        case Axis::kY:
            return {(p.x ^ p.z) != 0};
    }
    throw std::logic_error("bad axis");
}

PauliFrame gtubqc::merge_byproduct(PauliFrame frame, size_t wire, bool s1, bool s2) {
    frame.merge_byproduct(wire, s1, s2);
    return frame;
}

Unitary gtubqc::frame_as_unitary(const PauliFrame &frame, std::span<const size_t> wires) {
    static const Complex kPhase[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Matrix m = Matrix::Identity(1, 1) * kPhase[frame.phase_quarter_turns()];
    for (size_t w : wires) {
        PauliBits p = frame.at(w);
        Matrix local = pauli::I();
        if (p.x) {
            local = local * pauli::X();
        }
        if (p.z) {
            local = local * pauli::Z();
        }
        m = kron(m, local);
    }
    return Unitary::from_matrix(std::move(m));
}

Unitary gtubqc::frame_as_unitary(const PauliFrame &frame) {
    return Unitary::from_matrix(frame.matrix());
}

ControlledPush gtubqc::push_through_controlled(
    const PauliFrame &frame, size_t control, size_t target, Axis axis, const Angle &angle) {
    if (axis != Axis::kZ) {
        throw std::invalid_argument("push_through_controlled supports only controlled Rz (got axis " +
                                    std::string(axis_name(axis)) + ").");
    }
    if (control == target) {
        throw std::invalid_argument("Control and target wires must differ.");
    }
    PauliBits c = frame.at(control);
    PauliBits t = frame.at(target);
    ControlledPush out{{(c.x ^ t.x) != 0}, {}};
    if (c.x) {
        out.compensation.push_back({target, Axis::kZ, angle, std::nullopt});
    }
    return out;
}
