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

#include "gtubqc/plan.h"

#include <cmath>
#include <numbers>
#include <sstream>


using namespace gtubqc;

std::string_view gtubqc::angle_mode_name(AngleMode mode) {
    return mode == AngleMode::kGrid ? "grid" : "continuous";
}

AngleMode gtubqc::parse_angle_mode(std::string_view text) {
    if (text == "grid") {
        return AngleMode::kGrid;
    }
    if (text == "continuous") {
        return AngleMode::kContinuous;
    }
    throw PlanError("Unknown mode '" + std::string(text) + "' (expected grid or continuous).");
}

namespace {

constexpr double kPi = std::numbers::pi;

struct GateInfo {
    std::string_view name;
    size_t arity;
    bool needs_angle;
    bool needs_k;
};

constexpr GateInfo kGates[] = {
    {"H", 1, false, false},   {"S", 1, false, false},    {"T", 1, false, false},    {"X", 1, false, false},
    {"Y", 1, false, false},   {"Z", 1, false, false},    {"RX", 1, true, false},    {"RY", 1, true, false},
    {"RZ", 1, true, false},   {"CNOT", 2, false, false}, {"CZ", 2, false, false},   {"CS", 2, false, false},
    {"SWAP", 2, false, false}, {"CPHASE", 2, false, true}, {"CRZ", 2, true, false},
};

const GateInfo &validate(const Gate &gate, size_t num_wires) {
    for (const GateInfo &info : kGates) {
        if (info.name != gate.name) {
            continue;
        }
        if (gate.wires.size() != info.arity) {
            throw PlanError("Gate " + gate.name + " takes " + std::to_string(info.arity) + " wire(s), got " +
                            std::to_string(gate.wires.size()) + ".");
        }
        for (size_t w : gate.wires) {
            if (w >= num_wires) {
                throw PlanError("Gate " + gate.name + " uses wire " + std::to_string(w) + " but the plan has " +
                                std::to_string(num_wires) + " wires.");
            }
        }
        if (info.arity == 2 && gate.wires[0] == gate.wires[1]) {
            throw PlanError("Gate " + gate.name + " needs two distinct wires.");
        }
        if (info.needs_angle && !gate.angle) {
            throw PlanError("Gate " + gate.name + " needs an angle parameter.");
        }
        if (info.needs_k && (!gate.k || *gate.k < 1 || *gate.k > 30)) {
            throw PlanError("Gate CPHASE needs an integer parameter k in [1, 30].");
        }
        return info;
    }
    throw PlanError("Unsupported gate '" + gate.name + "'.");
}

Matrix diag4(Complex d3) {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = d3;
    return m;
}

Matrix local_matrix(const Gate &g) {
    const std::string &n = g.name;
    if (n == "RX") {
        return rotation_matrix(Axis::kX, g.angle->radians());
    }
    if (n == "RY") {
        return rotation_matrix(Axis::kY, g.angle->radians());
    }
    if (n == "RZ") {
        return rotation_matrix(Axis::kZ, g.angle->radians());
    }
    if (n == "CNOT") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
        return m;
    }
    if (n == "CZ") {
        return diag4(-1);
    }
    if (n == "CS") {
        return diag4(Complex(0, 1));
    }
    if (n == "CPHASE") {
        return diag4(std::exp(Complex(0, 2 * kPi / std::ldexp(1.0, *g.k))));
    }
    if (n == "SWAP") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
        return m;
    }
    if (n == "CRZ") {
        return controlled_rotation_matrix(Axis::kZ, *g.angle).matrix();
    }
    return named_gate_matrix(parse_named_gate(n));
}

/// Exact multiple of pi/4 when arg(c) is within 1e-12 of one.
Angle phase_angle(Complex c) {
    double a = std::arg(c);
    double k = std::round(a / (kPi / 4));
    if (std::abs(a - k * kPi / 4) <= 1e-12) {
        return Angle::pi(static_cast<int64_t>(k), 4);
    }
    return Angle::from_radians(a);
}

bool is_zero(const Angle &a) {
    return a.is_exact() ? a.pi_multiple()->num == 0 : a.radians() == 0;
}

class Compiler {
   public:
    Compiler(size_t num_wires, const CompileOptions &options) : options_(options) {
        plan_.num_wires = num_wires;
        plan_.mode = options.mode;
        plan_.global_phase = Angle::zero();
    }

    void gate(const Gate &g) {
        validate(g, plan_.num_wires);
        const std::string &n = g.name;
        size_t a = g.wires[0];
        if (n == "RX" || n == "RY" || n == "RZ") {
            rot(a, n == "RX" ? Axis::kX : n == "RY" ? Axis::kY : Axis::kZ, *g.angle);
        } else if (n == "CNOT") {
            cnot(a, g.wires[1]);
        } else if (n == "CZ") {
            cphase(a, g.wires[1], 1);
        } else if (n == "CS") {
            cphase(a, g.wires[1], 2);
        } else if (n == "CPHASE") {
            cphase(a, g.wires[1], *g.k);
        } else if (n == "SWAP") {
            cnot(a, g.wires[1]);
            cnot(g.wires[1], a);
            cnot(a, g.wires[1]);
        } else if (n == "CRZ") {
            crz(a, g.wires[1], *g.angle);
        } else {
            named(parse_named_gate(n), a);
        }
    }

    ComputationPlan finish() {
        return std::move(plan_);
    }

   private:
    void phase(const Angle &p) {
        plan_.global_phase = plan_.global_phase + p;
    }

    void rot(size_t w, Axis axis, const Angle &theta) {
        if (is_zero(theta)) {
            return;
        }
        if (options_.mode == AngleMode::kGrid) {
            if (!theta.on_quarter_pi_grid()) {
                throw PlanError("Angle " + theta.to_string() +
                                " is off the pi/4 grid; run the plan in continuous mode.");
            }
            GridSplit s = split_grid_angle(theta);
            phase(Angle::pi(s.wraps));
            for (const Angle &t : s.steps) {
                plan_.steps.push_back(BlindRotation{w, axis, t});
            }
            return;
        }
        ReducedAngle r = reduce_mod_2pi(theta);
        phase(Angle::pi(r.wraps));
        if (!is_zero(r.reduced)) {
            plan_.steps.push_back(BlindRotation{w, axis, r.reduced});
        }
    }

    void crz(size_t c, size_t t, const Angle &theta) {
        if (is_zero(theta)) {
            return;
        }
        if (options_.mode == AngleMode::kGrid && !theta.on_quarter_pi_grid()) {
            throw PlanError("Controlled angle " + theta.to_string() +
                            " is off the pi/4 grid; run the plan in continuous mode.");
        }
        plan_.steps.push_back(BlindControlledRotation{c, t, Axis::kZ, theta});
    }

    void named(NamedGate g, size_t w) {
        EulerOrder o = options_.order;
        EulerTriple t{};
        bool tabulated = o == EulerOrder::kZYZ || o == EulerOrder::kYXY || o == EulerOrder::kZXZ;
        if (tabulated && named_gate_table(g, o).matches_up_to_phase()) {
            TableEntry e = named_gate_table(g, o);
            t = e.triple;
            phase(phase_angle(e.residual_phase));
        } else {
            t = euler_decompose(named_gate_matrix(g), o);
        }
        auto [outer, middle] = euler_axes(o);
        phase(t.phase);
        rot(w, outer, t.gamma);
        rot(w, middle, t.beta);
        rot(w, outer, t.alpha);
    }

    /// Rotations of an operator-ordered sequence, emitted in time order.
    void sequence(std::span<const RotationGate> seq, size_t w) {
        for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
            rot(w, it->axis, it->angle);
        }
    }

    void cz(size_t c, size_t t) {
        // CZ = e^{i pi/4} Rz_c(pi/2) C-Rz(pi).
        phase(Angle::pi(1, 4));
        crz(c, t, Angle::pi(1));
        rot(c, Axis::kZ, Angle::pi(1, 2));
    }

    void cnot(size_t c, size_t t) {
        named(NamedGate::kH, t);
        cz(c, t);
        named(NamedGate::kH, t);
    }

    void cphase(size_t c, size_t t, int k) {
        if (k == 1) {
            cz(c, t);
            return;
        }
        ABCDecomposition d = abc_for_phase(Angle::pi(2, int64_t{1} << k));
        sequence(d.c_seq, t);
        cnot(c, t);
        sequence(d.b_seq, t);
        cnot(c, t);
        sequence(d.a_seq, t);
        // diag(1, e^{i alpha}) = e^{i alpha/2} Rz(alpha) on the control.
        phase(d.alpha.scaled(Rational(1, 2)));
        rot(c, Axis::kZ, d.alpha);
    }

    CompileOptions options_;
    ComputationPlan plan_;
};

}  // namespace

Matrix gtubqc::gate_matrix(const Gate &gate, size_t num_wires) {
    validate(gate, num_wires);
    return embed_unitary(local_matrix(gate), gate.wires, num_wires);
}

Matrix gtubqc::circuit_matrix(std::span<const Gate> gates, size_t num_wires) {
    Matrix m = Matrix::Identity(int64_t{1} << num_wires, int64_t{1} << num_wires);
    for (const Gate &g : gates) {
        m = gate_matrix(g, num_wires) * m;
    }
    return m;
}

std::string gtubqc::step_to_string(const PlanStep &step) {
    std::ostringstream ss;
    if (const auto *r = std::get_if<BlindRotation>(&step)) {
        ss << "R" << axis_name(r->axis) << "(" << r->theta << ") q" << r->wire;
    } else {
        const auto &c = std::get<BlindControlledRotation>(step);
        ss << "C-R" << axis_name(c.axis) << "(" << c.theta << ") q" << c.control << " -> q" << c.target;
    }
    return ss.str();
}

GridSplit gtubqc::split_grid_angle(const Angle &theta) {
    if (!theta.on_quarter_pi_grid()) {
        throw PlanError("Angle " + theta.to_string() + " is off the pi/4 grid.");
    }
    ReducedAngle r = reduce_mod_2pi(theta);
    GridSplit out{{}, r.wraps};
    int k = r.reduced.grid_index();
    if (k & 4) {
        out.steps.push_back(Angle::pi(1));
    }
    if (k & 2) {
        out.steps.push_back(Angle::pi(1, 2));
    }
    if (k & 1) {
        out.steps.push_back(Angle::pi(1, 4));
    }
    return out;
}

ComputationPlan gtubqc::compile_gates(std::span<const Gate> gates, size_t num_wires, const CompileOptions &options) {
    if (num_wires == 0) {
        throw PlanError("A plan needs at least one wire.");
    }
    Compiler c(num_wires, options);
    for (const Gate &g : gates) {
        c.gate(g);
    }
    return c.finish();
}

Matrix gtubqc::simulate_plan(const ComputationPlan &plan) {
    size_t n = plan.num_wires;
    Matrix m = Matrix::Identity(int64_t{1} << n, int64_t{1} << n);
    for (const PlanStep &step : plan.steps) {
        if (const auto *r = std::get_if<BlindRotation>(&step)) {
            std::array<size_t, 1> w{r->wire};
            m = embed_unitary(rotation_matrix(r->axis, r->theta.radians()), w, n) * m;
        } else {
            const auto &c = std::get<BlindControlledRotation>(step);
            std::array<size_t, 2> w{c.control, c.target};
            m = embed_unitary(controlled_rotation_matrix(c.axis, c.theta).matrix(), w, n) * m;
        }
    }
    return std::exp(Complex(0, plan.global_phase.radians())) * m;
}

Angle gtubqc::random_grid_angle(Rng &rng) {
    return Angle::pi(static_cast<int64_t>(rng.below(8)), 4);
}

EncryptedAngle gtubqc::encrypt_angle_with_key(const Angle &theta, bool r1, SignBit r2, int xi_index, AngleMode mode) {
    if (mode == AngleMode::kGrid && !theta.on_quarter_pi_grid()) {
        throw PlanError("Cannot encrypt off-grid angle " + theta.to_string() + " in grid mode.");
    }
    if (xi_index < 0 || xi_index >= 8) {
        throw std::invalid_argument("xi index must be in [0, 8).");
    }
    Angle xi = Angle::pi(xi_index, 4);
    ReducedAngle r = reduce_mod_2pi(Angle::pi(r1 ? 1 : 0) + theta.signed_by(r2.value) + xi);
    return {r.reduced, r1, r2, xi, r.wraps};
}

EncryptedAngle gtubqc::encrypt_angle(const Angle &theta, Rng &rng, SignBit r2, AngleMode mode) {
    bool r1 = rng.bit();
    int xi = static_cast<int>(rng.below(8));
    return encrypt_angle_with_key(theta, r1, r2, xi, mode);
}

Cancellation gtubqc::schedule_cancellation(const Angle &xi, int k) {
    if (k != 1 && k != 2) {
        throw std::invalid_argument("Cancellation k must be 1 or 2.");
    }
    if (!xi.on_quarter_pi_grid()) {
        throw std::invalid_argument("xi must be on the pi/4 grid.");
    }
    return {xi, k};
}
