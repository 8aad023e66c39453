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

// Acceptance checks. Prints one PASS/FAIL line per criterion; details of failed
// sub-checks follow on indented lines. Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "gtubqc/pauli_frame.h"
#include "gtubqc/plan.h"
#include "gtubqc/qft.h"
#include "gtubqc/rotations.h"
#include "gtubqc/session.h"
#include "gtubqc/teleport.h"
#include "gtubqc/verify.h"
#include "test_util.test.h"

using namespace gtubqc;
using namespace gtubqc::testing;

namespace {

constexpr double kPi = std::numbers::pi;

class Criterion {
   public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    /// Records a sub-check; `value` and `limit` are reported on failure.
    void check(bool ok, const std::string &what, double value = 0, double limit = 0) {
        if (!ok) {
            char buf[96];
            std::snprintf(buf, sizeof buf, " (value %.3g, limit %.3g)", value, limit);
            failures_.push_back(what + buf);
        }
        checks_++;
    }
    void within(double value, double limit, const std::string &what) {
        check(value <= limit, what, value, limit);
    }

    bool report() const {
        bool ok = failures_.empty();
        std::printf("%s criterion %d: %s [%zu checks]\n", ok ? "PASS" : "FAIL", number_, title_.c_str(), checks_);
        for (const std::string &f : failures_) {
            std::printf("    failed: %s\n", f.c_str());
        }
        std::fflush(stdout);
        return ok;
    }

   private:
    int number_;
    std::string title_;
    size_t checks_ = 0;
    std::vector<std::string> failures_;
};

Matrix xz(bool x, bool z) {
    Matrix m = pauli::I();
    if (x) {
        m = m * pauli::X();
    }
    if (z) {
        m = m * pauli::Z();
    }
    return m;
}

double fidelity(const Vector &a, const Vector &b) {
    return std::norm(a.dot(b));
}

/// Angle difference folded into (-pi, pi].
double wrapped(double a) {
    return std::remainder(a, 2 * kPi);
}

std::vector<Gate> random_circuit(Rng &rng, size_t max_gates) {
    static const char *kOne[] = {"H", "S", "T", "X", "Y", "Z"};
    std::vector<Gate> gates;
    size_t count = 1 + rng.below(max_gates);
    for (size_t i = 0; i < count; i++) {
        if (rng.below(7) == 6) {
            size_t c = rng.below(2);
            gates.push_back({"CNOT", {c, 1 - c}, {}, {}});
        } else {
            gates.push_back({kOne[rng.below(6)], {rng.below(2)}, {}, {}});
        }
    }
    return gates;
}

// 1. Rotation/Pauli commutation and same-axis composition.
bool rotation_algebra() {
    Criterion c(1, "rotation algebra: six commutation identities and same-axis composition, 100 angles each");
    struct Line {
        Axis axis;
        Matrix pauli;
        bool flips;
        const char *name;
    };
    std::vector<Line> lines{{Axis::kX, pauli::X(), false, "Rx(b)X = XRx(b)"},
                            {Axis::kX, pauli::Z(), true, "Rx(b)Z = ZRx(-b)"},
                            {Axis::kY, pauli::X(), true, "Ry(b)X = XRy(-b)"},
                            {Axis::kY, pauli::Z(), true, "Ry(b)Z = ZRy(-b)"},
                            {Axis::kZ, pauli::X(), true, "Rz(b)X = XRz(-b)"},
                            {Axis::kZ, pauli::Z(), false, "Rz(b)Z = ZRz(b)"}};
    Rng rng(101);
    for (const Line &l : lines) {
        double worst = 0;
        for (int i = 0; i < 100; i++) {
            double b = random_angle(rng);
            Matrix lhs = rotation_matrix(l.axis, b) * l.pauli;
            Matrix rhs = l.pauli * rotation_matrix(l.axis, l.flips ? -b : b);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
        c.within(worst, tol::kNumerical, l.name);
    }
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        double worst = 0;
        for (int i = 0; i < 100; i++) {
            RotationGate g1{a, Angle::from_radians(random_angle(rng))};
            RotationGate g2{a, Angle::from_radians(random_angle(rng))};
            Matrix composed = rotation_matrix(compose_same_axis(g1, g2)).matrix();
            worst = std::max(worst, max_abs_diff(composed, rotation_matrix(g1).matrix() * rotation_matrix(g2).matrix()));
        }
        c.within(worst, tol::kNumerical, "R" + std::string(axis_name(a)) + "(a)R(b) = R(a+b)");
    }
    return c.report();
}

// 2. Named-gate tables.
bool decomposition_tables() {
    Criterion c(2, "decomposition tables reconstruct up to phase; zyz H phase-exact; residual phases frozen");
    struct Frozen {
        EulerOrder order;
        NamedGate gate;
        double arg_over_pi;
    };
    // Independent numpy evaluation (tests/oracles/table_residuals.py).
    std::vector<Frozen> frozen;
    for (EulerOrder o : {EulerOrder::kZYZ, EulerOrder::kYXY, EulerOrder::kZXZ}) {
        for (NamedGate g : kAllNamedGates) {
            double arg = 0;
            if (o == EulerOrder::kYXY && g == NamedGate::kH) {
                arg = -0.5;
            } else if (o == EulerOrder::kZXZ && g == NamedGate::kY) {
                arg = 0.25;
            }
            frozen.push_back({o, g, arg});
        }
    }
    for (const Frozen &f : frozen) {
        TableEntry e = named_gate_table(f.gate, f.order);
        std::string name = std::string(euler_order_name(f.order)) + " " + std::string(named_gate_name(f.gate));
        c.within(e.deviation, tol::kStructural, name + " reconstructs up to global phase");
        double arg = std::arg(e.residual_phase) / kPi;
        c.within(std::abs(arg - f.arg_over_pi), 1e-9, name + " residual phase matches oracle");
    }
    c.check(named_gate_table(NamedGate::kH, EulerOrder::kZYZ).phase_exact(), "zyz H phase-exact");
    return c.report();
}

// 3. Euler and ABC round trips, CPhase family.
bool euler_abc() {
    Criterion c(3, "Euler round trip in six orders, ABC identities, CPhase ABC family k=1..6");
    Rng rng(303);
    std::vector<Matrix> unitaries;
    for (int i = 0; i < 200; i++) {
        unitaries.push_back(random_unitary(1, rng));
    }
    for (EulerOrder o : kAllEulerOrders) {
        double worst = 0;
        for (const Matrix &u : unitaries) {
            worst = std::max(worst, max_abs_diff(euler_decompose(u, o).matrix(), u));
        }
        c.within(worst, tol::kFidelity, std::string(euler_order_name(o)) + " round trip");
    }
    double worst_abc = 0;
    double worst_u = 0;
    for (const Matrix &u : unitaries) {
        ABCDecomposition d = abc_decompose(u);
        worst_abc = std::max(worst_abc, max_abs_diff(d.a() * d.b() * d.c(), pauli::I()));
        worst_u = std::max(worst_u, max_abs_diff(d.reconstruct(), u));
    }
    c.within(worst_abc, tol::kStructural, "ABC = I");
    c.within(worst_u, tol::kStructural, "e^{ia}AXBXC = U");
    for (int k = 1; k <= 6; k++) {
        auto p = int64_t{1} << k;
        Matrix target = pauli::I();
        target(1, 1) = std::exp(Complex(0, 2 * kPi / static_cast<double>(p)));
        ABCDecomposition d = abc_decompose(target);
        std::string tag = "CPhase k=" + std::to_string(k);
        c.within(std::abs(wrapped(d.gamma.radians())), tol::kStructural, tag + " gamma = 0");
        double sum = d.beta.radians() + d.delta.radians();
        c.within(std::abs(sum - 2 * kPi / static_cast<double>(p)), tol::kStructural, tag + " beta + delta = 2pi/2^k");
        c.within(max_abs_diff(d.reconstruct(), target), tol::kStructural, tag + " reconstructs diag(1, e^{2pi i/2^k})");
        c.within(std::abs(wrapped(d.alpha.radians() + kPi / static_cast<double>(p))), tol::kStructural,
                 tag + " alpha = -pi/2^k");
    }
    return c.report();
}

// 4. Teleportation table, XOR law in transcripts, worked case.
bool teleportation() {
    Criterion c(4, "teleportation: 16 code/outcome combinations, XOR law in transcripts, worked case");
    Rng rng(404);
    StateVector psi = random_state(1, rng);
    RotationGate rz{Axis::kZ, Angle::pi(1, 4)};
    Vector rpsi = rotation_matrix(rz).matrix() * psi.amplitudes();
    for (BellCode anc : BellCode::all()) {
        for (BellCode out : BellCode::all()) {
            TeleportResult r = teleport_rotation_with_outcome(psi, 0, anc, rz, out);
            // |psi>|phi+> = 1/2 sum |bell(a,b)> X^a Z^b |psi>; the ancilla code adds X^c Z^d in front.
            Vector oracle = xz(anc.b1, anc.b2) * xz(out.b1, out.b2) * rpsi;
            std::string tag = "ancilla " + anc.to_string() + " outcome " + out.to_string();
            c.within((r.state.amplitudes() - oracle).cwiseAbs().maxCoeff(), tol::kNumerical, tag);
            c.check(r.step.byproduct == (anc ^ out), tag + " byproduct");
        }
    }
    Rng plans(4040);
    size_t steps = 0;
    for (int i = 0; i < 20; i++) {
        std::vector<Gate> gates = random_circuit(plans, 20);
        SessionConfig config;
        config.seed = plans.next_u64();
        RunResult r = run_computation(compile_gates(gates, 2), random_state(2, plans), config);
        for (const Json &s : r.transcript.secrets()) {
            if (s["type"] != "teleport_step") {
                continue;
            }
            auto check_one = [&](const Json &a, const Json &o, const Json &b) {
                BellCode code = BellCode::parse(a.get<std::string>());
                BellCode outcome = BellCode::parse(o.get<std::string>());
                c.check(BellCode::parse(b.get<std::string>()) == (code ^ outcome), "XOR by-product law in transcript");
                steps++;
            };
            if (s["ancilla_code"].is_array()) {
                for (size_t j = 0; j < s["ancilla_code"].size(); j++) {
                    check_one(s["ancilla_code"][j], s["outcome"][j], s["byproduct"][j]);
                }
            } else {
                check_one(s["ancilla_code"], s["outcome"], s["byproduct"]);
            }
        }
    }
    c.check(steps > 100, "transcripts contain teleportation steps", static_cast<double>(steps), 100);
    TeleportResult worked = teleport_rotation_with_outcome(psi, 0, BellCode{0, 0}, rz, BellCode{0, 1});
    c.check(worked.step.byproduct == (BellCode{0, 1}), "phi+ ancilla, phi- outcome gives X^0 Z^1");
    Vector expect = pauli::Z() * rpsi;
    c.within((worked.state.amplitudes() - expect).cwiseAbs().maxCoeff(), tol::kNumerical, "worked case state");
    return c.report();
}

// 5. By-product merging.
bool byproduct_merging() {
    Criterion c(5, "by-product merging: 64 three-step patterns against the matrix oracle");
    for (int pattern = 0; pattern < 64; pattern++) {
        PauliFrame f(1);
        Matrix oracle = pauli::I();
        uint8_t x = 0;
        uint8_t z = 0;
        for (int step = 0; step < 3; step++) {
            bool s1 = (pattern >> (2 * step + 1)) & 1;
            bool s2 = (pattern >> (2 * step)) & 1;
            f.merge_byproduct(0, s1, s2);
            oracle = xz(s1, s2) * oracle;
            x ^= s1;
            z ^= s2;
        }
        std::string tag = "pattern " + std::to_string(pattern);
        c.check(f.at(0) == (PauliBits{x, z}), tag + " exponents are XORs");
        c.check(equal_up_to_global_phase(xz(x, z), oracle, tol::kNumerical), tag + " up to global phase");
        c.within(max_abs_diff(f.matrix(), oracle), tol::kNumerical, tag + " tracked phase exact");
    }
    return c.report();
}

// 6. End-to-end correctness.
bool correctness() {
    Criterion c(6, "end-to-end: 100 random 2-qubit plans at fidelity >= 1-1e-9; correctness chain");
    Rng rng(606);
    double worst = 0;
    for (int i = 0; i < 100; i++) {
        std::vector<Gate> gates = random_circuit(rng, 20);
        StateVector input = random_state(2, rng);
        SessionConfig config;
        config.seed = rng.next_u64();
        RunResult r = run_computation(compile_gates(gates, 2), input, config);
        if (r.status != ExitCode::kOk || !r.output) {
            c.check(false, "plan " + std::to_string(i) + " finished: " + r.error);
            continue;
        }
        Vector want = circuit_matrix(gates, 2) * input.amplitudes();
        worst = std::max(worst, 1 - fidelity(want, r.output->amplitudes()));
    }
    c.within(worst, tol::kFidelity, "1 - fidelity over 100 plans");

    // theta'_3 = pi - theta_3 + xi_3, theta'_2 = theta_2 + xi_2, theta'_1 = pi + theta_1 + xi_1,
    // each followed by R(pi - xi).
    struct Step {
        Axis axis;
        bool r1;
        bool r2;
    };
    const Step chain[3] = {{Axis::kX, true, false}, {Axis::kZ, false, false}, {Axis::kX, true, true}};
    for (int trial = 0; trial < 20; trial++) {
        double theta[3];
        Angle xi[3];
        for (int j = 0; j < 3; j++) {
            theta[j] = random_angle(rng);
            xi[j] = random_grid_angle(rng);
        }
        PauliFrame frame(1);
        Matrix actual = pauli::I();
        Matrix ideal = pauli::I();
        for (int j = 0; j < 3; j++) {
            const Step &s = chain[j];
            c.check(adaptive_sign(frame, 0, s.axis).value == s.r2, "chain sign matches the tracked frame");
            double prime = (s.r1 ? kPi : 0) + (s.r2 ? -theta[j] : theta[j]) + xi[j].radians();
            Cancellation cancel = schedule_cancellation(xi[j], 1);
            actual = rotation_matrix(s.axis, cancel.angle().radians()) * rotation_matrix(s.axis, prime) * actual;
            ideal = rotation_matrix(s.axis, theta[j]) * ideal;
            PiRotationPauli p = pi_rotation_pauli(s.axis);
            for (int n = 0; n < 1 + int(s.r1); n++) {
                frame.merge_byproduct(0, p.pauli.x, p.pauli.z);
                frame.add_phase_quarter_turns(p.quarter_turns);
            }
        }
        c.within(max_abs_diff(actual, frame.matrix() * ideal), tol::kNumerical, "chain equals tracked frame times ideal");
        Matrix stated = Complex(0, 1) * pauli::Z() * ideal;
        c.check(equal_up_to_global_phase(actual, stated, tol::kNumerical), "chain equals iZ Rx(t3)Rz(t2)Rx(t1) up to phase");
        c.check(frame.at(0) == (PauliBits{0, 1}), "chain frame is Z");
    }
    return c.report();
}

// 7. Blindness.
bool blindness() {
    Criterion c(7, "blindness: input audit over 50 inputs, angle marginals TV 0, no key material in server view");
    std::vector<Gate> gates{{"H", {0}, {}, {}}, {"CNOT", {0, 1}, {}, {}}, {"T", {1}, {}, {}}, {"S", {0}, {}, {}}};
    ComputationPlan plan = compile_gates(gates, 2);
    Rng rng(707);
    double worst = 0;
    for (int i = 0; i < 50; i++) {
        InputAuditReport r = blindness_audit_inputs(plan, random_state(2, rng), std::nullopt, 2, 1 + i);
        worst = std::max(worst, r.max_distance);
    }
    c.within(worst, 1e-10, "trace distance from I/4");

    AngleAuditReport a = blindness_audit_angles(plan);
    c.check(a.theta_marginals.size() == 3, "marginals for pi/4, pi/2, pi");
    c.within(a.max_tv, 0.0, "TV distance between theta' marginals");
    c.check(a.all_uniform, "every delegated angle uniform over its keys");

    SessionConfig config;
    config.seed = 77;
    config.test_every = 2;
    RunResult run = run_computation(plan, random_state(2, rng), config);
    c.check(run.status == ExitCode::kOk, "audited run completes");
    for (PartyRole s : {PartyRole::kServer1, PartyRole::kServer2}) {
        std::vector<std::string> leaks = find_secret_keys(run.transcript.server_view(s));
        c.check(leaks.empty(), std::string(role_name(s)) + " view has no key material",
                static_cast<double>(leaks.size()), 0);
    }
    c.check(find_secret_keys(parse_jsonl(run.transcript.to_jsonl(false))).empty(), "public transcript has no secrets");
    c.check(check_unidirectional(run.transcript.messages()).empty(), "no server-to-server messages");
    return c.report();
}

// 8. Test protocol.
bool test_protocol() {
    Criterion c(8, "test protocol: 12 invariance lines, 1e4 honest trials, adversaries within 3 sigma");
    Rng rng(808);
    for (BellCode code : BellCode::all()) {
        for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
            double worst = 0;
            for (int i = 0; i < 20; i++) {
                PairedRotation p = paired_rotation_invariance(code, a, Angle::from_radians(random_angle(rng)));
                Matrix u = kron(rotation_matrix(p.op1.axis, p.op1.angle.radians()),
                                rotation_matrix(p.op2.axis, p.op2.angle.radians()));
                StateVector s = bell_state(code);
                StateVector rotated = StateVector::unnormalized(u * s.amplitudes());
                worst = std::max(worst, equal_up_to_global_phase(rotated, s, tol::kNumerical) ? 0.0 : 1.0);
            }
            c.within(worst, 0, "invariance line " + code.to_string() + " " + std::string(axis_name(a)));
        }
    }
    Server h1(PartyRole::kServer1);
    Server h2(PartyRole::kServer2);
    for (TestKind kind : {TestKind::kRotation, TestKind::kControlled}) {
        size_t aborts = 0;
        for (int i = 0; i < 10000; i++) {
            if (!run_test(random_test_setup(kind, rng), h1, h2, rng).passed) {
                aborts++;
            }
        }
        c.within(static_cast<double>(aborts), 0, std::string("honest ") + std::string(test_kind_name(kind)) + " aborts");
    }
    const char *specs[] = {"flip:bob1:1", "flip:bob1:2", "flip:bob2:1", "flip:bob2:2", "fixed:bob1:00",
                           "fixed:bob2:11", "skip:bob1",  "skip:bob2",   "offset:bob1:pi/2", "offset:bob2:pi/4",
                           "malformed:bob1"};
    for (const char *spec : specs) {
        AdversaryModel m = AdversaryModel::parse(spec);
        Server b1(PartyRole::kServer1, m);
        Server b2(PartyRole::kServer2, m);
        for (TestKind kind : {TestKind::kRotation, TestKind::kControlled}) {
            DetectionStats st = detection_statistics(kind, b1, b2, 1000, rng);
            double gap = std::abs(st.observed_rate() - st.predicted_rate()) * static_cast<double>(st.trials);
            c.check(st.within_3_sigma(), std::string(spec) + " " + std::string(test_kind_name(kind)), gap,
                    3 * std::sqrt(st.variance));
        }
    }
    return c.report();
}

// 9. Blind QFT.
bool blind_qft() {
    Criterion c(9, "blind QFT: n=2,3 match the DFT; n=2 on |00> gives the uniform superposition");
    Rng rng(909);
    for (size_t n : {2u, 3u}) {
        for (int i = 0; i < 5; i++) {
            StateVector input = i == 0 ? StateVector::basis(n, rng.below(size_t{1} << n)) : random_state(n, rng);
            SessionConfig config;
            config.seed = rng.next_u64();
            BlindQftResult r = run_blind_qft(n, input, config);
            c.check(r.run.status == ExitCode::kOk, "n=" + std::to_string(n) + " run completes");
            c.within(1 - r.fidelity, tol::kFidelity, "n=" + std::to_string(n) + " 1 - fidelity against DFT");
        }
    }
    SessionConfig config;
    config.seed = 9;
    BlindQftResult r = run_blind_qft(2, StateVector::basis(2, 0), config);
    Vector uniform = Vector::Constant(4, Complex(0.5, 0));
    c.within(1 - fidelity(uniform, r.run.output->amplitudes()), tol::kFidelity, "n=2 |00> -> uniform");
    return c.report();
}

// 10. Determinism.
bool determinism() {
    Criterion c(10, "determinism: (plan, seed) replays to a byte-identical transcript");
    Rng rng(1010);
    for (int i = 0; i < 20; i++) {
        size_t wires = 1 + rng.below(2);
        std::vector<Gate> gates = random_circuit(rng, 12);
        if (wires == 1) {
            for (Gate &g : gates) {
                if (g.name == "CNOT") {
                    g = {"H", {0}, {}, {}};
                }
                g.wires = {0};
            }
        }
        CompileOptions opt;
        if (i % 4 == 3) {
            opt.mode = AngleMode::kContinuous;
            gates.push_back({"RY", {0}, Angle::from_radians(random_angle(rng)), {}});
        }
        ComputationPlan plan = compile_gates(gates, wires, opt);
        StateVector input = random_state(wires, rng);
        SessionConfig config;
        config.seed = rng.next_u64();
        std::string a = run_computation(plan, input, config).transcript.to_jsonl(true);
        std::string b = run_computation(plan, input, config).transcript.to_jsonl(true);
        c.check(a == b, "plan " + std::to_string(i) + " replay");
        c.check(!a.empty(), "plan " + std::to_string(i) + " transcript non-empty");
    }
    SessionConfig config;
    config.seed = 5;
    std::string q1 = run_blind_qft(3, StateVector::basis(3, 3), config).run.transcript.to_jsonl(true);
    std::string q2 = run_blind_qft(3, StateVector::basis(3, 3), config).run.transcript.to_jsonl(true);
    c.check(q1 == q2, "blind QFT replay");
    return c.report();
}

}  // namespace

int main() {
    int failed = 0;
    for (bool (*criterion)() : {rotation_algebra, decomposition_tables, euler_abc, teleportation, byproduct_merging,
                                correctness, blindness, test_protocol, blind_qft, determinism}) {
        failed += criterion() ? 0 : 1;
    }
    std::printf("%d of 10 criteria failed\n", failed);
    return failed;
}
