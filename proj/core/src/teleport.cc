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

#include "gtubqc/teleport.h"

#include <cmath>
#include <stdexcept>

using namespace gtubqc;

BellCode gtubqc::byproduct_of(BellCode ancilla, BellCode outcome) {
    return ancilla ^ outcome;
}

bool gtubqc::byproduct_sign(BellCode ancilla, BellCode outcome) {
    return ancilla.b2 && outcome.b1;
}

StateVector gtubqc::append_bell_pair(const StateVector &state, BellCode code) {
    return state.tensor(bell_state(code));
}

StateVector gtubqc::move_wire(const StateVector &state, size_t from, size_t to) {
    size_t n = state.num_qubits();
    if (from >= n || to >= n) {
        throw std::invalid_argument("move_wire: wire out of range.");
    }
    std::vector<size_t> rest;
    for (size_t w = 0; w < n; w++) {
        if (w != from) {
            rest.push_back(w);
        }
    }
    std::vector<size_t> order;
    for (size_t k = 0, r = 0; k < n; k++) {
        order.push_back(k == to ? from : rest[r++]);
    }
    return permute_wires(state, order);
}

namespace {

StateVector rotated_with_pair(const StateVector &state, size_t data, BellCode ancilla_code, const RotationGate &rotation) {
    if (data >= state.num_qubits()) {
        throw std::invalid_argument("Data wire out of range.");
    }
    StateVector s = append_bell_pair(state, ancilla_code);
    return apply_unitary(s, rotation_matrix(rotation), {data});
}

TeleportStep make_step(BellCode ancilla, BellCode outcome, RotationInstruction rotation) {
    return {ancilla, outcome, byproduct_of(ancilla, outcome), byproduct_sign(ancilla, outcome), std::move(rotation)};
}

}  // namespace

TeleportResult gtubqc::teleport_rotation(
    const StateVector &state, size_t data, BellCode ancilla_code, const RotationGate &rotation, Rng &rng) {
    size_t n = state.num_qubits();
    StateVector s = rotated_with_pair(state, data, ancilla_code, rotation);
    BellMeasurement m = bell_measure(s, data, n, rng);
    // Survivors: original wires minus data, then the output half at the end.
    StateVector out = move_wire(m.state, n - 1, data);
    return {make_step(ancilla_code, m.outcome, {data, rotation.axis, rotation.angle, std::nullopt}), std::move(out)};
}

TeleportResult gtubqc::teleport_rotation_with_outcome(
    const StateVector &state, size_t data, BellCode ancilla_code, const RotationGate &rotation, BellCode outcome) {
    size_t n = state.num_qubits();
    StateVector s = rotated_with_pair(state, data, ancilla_code, rotation);
    Vector v = project_bell(s, data, n, outcome);
    double norm = v.norm();
    if (norm <= tol::kNumerical) {
        throw std::invalid_argument("Bell outcome " + outcome.to_string() + " has probability 0.");
    }
    StateVector out = move_wire(StateVector::from_amplitudes(v / norm, tol::kStructural), n - 1, data);
    return {make_step(ancilla_code, outcome, {data, rotation.axis, rotation.angle, std::nullopt}), std::move(out)};
}

ControlledTeleportResult gtubqc::teleport_controlled(const StateVector &state,
                                                     size_t control,
                                                     size_t target,
                                                     std::array<BellCode, 2> ancilla_codes,
                                                     Axis axis,
                                                     const Angle &angle,
                                                     Rng &rng,
                                                     std::array<std::optional<BellCode>, 2> forced) {
    size_t n = state.num_qubits();
    if (control >= n || target >= n || control == target) {
        throw std::invalid_argument("Bad control/target wires.");
    }
    StateVector s = append_bell_pair(append_bell_pair(state, ancilla_codes[0]), ancilla_codes[1]);
    s = apply_unitary(s, controlled_rotation_matrix(axis, angle), {control, target});
    // Wires: [0, n) data, n/n+1 control pair, n+2/n+3 target pair.
    auto measure = [&](const StateVector &st, size_t a, size_t b, const std::optional<BellCode> &f) {
        return f ? bell_measure_as(st, a, b, *f) : bell_measure(st, a, b, rng);
    };
    BellMeasurement mc = measure(s, control, n, forced[0]);
    // After removing control and n: target index shifts if above control; pair B shifts by 2.
    auto index_after = [](size_t wire, size_t a, size_t b) {
        return wire - (wire > a ? 1 : 0) - (wire > b ? 1 : 0);
    };
    size_t t1 = index_after(target, control, n);
    size_t b1 = index_after(n + 2, control, n);
    BellMeasurement mt = measure(mc.state, t1, b1, forced[1]);
    // Remaining: n-2 untouched data wires, then control output, then target output.
    StateVector out = mt.state;
    size_t m = out.num_qubits();
    if (control < target) {
        out = move_wire(out, m - 2, control);
        out = move_wire(out, m - 1, target);
    } else {
        out = move_wire(out, m - 1, target);
        out = move_wire(out, m - 1, control);
    }
    RotationInstruction rot{target, axis, angle, control};
    return {{make_step(ancilla_codes[0], mc.outcome, rot), make_step(ancilla_codes[1], mt.outcome, rot)},
            std::move(out)};
}
