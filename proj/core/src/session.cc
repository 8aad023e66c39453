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

#include "gtubqc/session.h"

#include <cmath>
#include <cstdio>

#include "gtubqc/verify.h"

using namespace gtubqc;

RouteDecision RoutingPolicy::route_single() {
    RouteDecision d{next_, std::nullopt};
    next_ = other_server(next_);
    return d;
}

RouteDecision RoutingPolicy::route_controlled(Rng &rng) {
    PartyRole s = rng.bit() ? PartyRole::kServer2 : PartyRole::kServer1;
    return {s, other_server(s)};
}

RouteDecision gtubqc::route_step(const PlanStep &step, RoutingPolicy &policy, Rng &rng) {
    if (std::holds_alternative<BlindRotation>(step)) {
        return policy.route_single();
    }
    return policy.route_controlled(rng);
}

void gtubqc::validate_plan(const ComputationPlan &plan) {
    if (plan.num_wires == 0) {
        throw PlanError("A plan needs at least one wire.");
    }
    auto check_wire = [&](size_t w) {
        if (w >= plan.num_wires) {
            throw PlanError("Wire " + std::to_string(w) + " out of range for " + std::to_string(plan.num_wires) +
                            " wires.");
        }
    };
    for (const PlanStep &step : plan.steps) {
        if (const auto *r = std::get_if<BlindRotation>(&step)) {
            check_wire(r->wire);
            if (plan.mode == AngleMode::kGrid) {
                int k = r->theta.on_quarter_pi_grid() ? r->theta.grid_index() : -1;
                if (k != 1 && k != 2 && k != 4) {
                    throw PlanError("Grid-mode rotation angle must be pi/4, pi/2 or pi, got " +
                                    r->theta.to_string() + ".");
                }
            } else if (!std::isfinite(r->theta.radians())) {
                throw PlanError("Rotation angle is not finite.");
            }
            continue;
        }
        const auto &c = std::get<BlindControlledRotation>(step);
        check_wire(c.control);
        check_wire(c.target);
        if (c.control == c.target) {
            throw PlanError("Controlled rotation needs distinct wires.");
        }
        if (c.axis != Axis::kZ) {
            throw PlanError("Only controlled Rz is delegated.");
        }
        if (plan.mode == AngleMode::kGrid && !c.theta.on_quarter_pi_grid()) {
            throw PlanError("Grid-mode controlled angle " + c.theta.to_string() + " is off the pi/4 grid.");
        }
        if (!std::isfinite(c.theta.radians())) {
            throw PlanError("Controlled angle is not finite.");
        }
    }
}

StateVector gtubqc::recover_output(const StateVector &state, const PauliFrame &frame) {
    if (frame.num_wires() != state.num_qubits()) {
        throw std::invalid_argument("Frame and state sizes differ.");
    }
    return StateVector::unnormalized(frame.matrix().adjoint() * state.amplitudes());
}

std::string gtubqc::config_hash(const Json &header) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : header.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

Json code_json(BellCode c) {
    return c.to_string();
}

BellCode random_code(Rng &rng) {
    return BellCode::from_index(static_cast<int>(rng.below(4)));
}

/// Pauli bits the adaptive-sign rule sees in a lone by-product X^b1 Z^b2.
SignBit byproduct_axis_sign(BellCode b, Axis axis) {
    PauliFrame f(1);
    f.set(0, {b.b1, b.b2});
    return adaptive_sign(f, 0, axis);
}

class Session {
   public:
    Session(const ComputationPlan &plan, const SessionConfig &config, const RunHooks &hooks)
        : plan_(plan),
          config_(config),
          hooks_(hooks),
          root_(config.seed),
          keys_(root_.split()),
          routes_(root_.split()),
          center_(root_.split()),
          meas_(root_.split()),
          tests_(root_.split()),
          bob1_(PartyRole::kServer1, adversary_for(PartyRole::kServer1)),
          bob2_(PartyRole::kServer2, adversary_for(PartyRole::kServer2)),
          reg_(StateVector::basis(0, 0)),
          frame_(plan.num_wires) {
    }

    RunResult run(const StateVector &input) {
        RunResult out;
        try {
            write_header();
            validate_plan(plan_);
            if (input.num_qubits() != plan_.num_wires) {
                throw PlanError("Input has " + std::to_string(input.num_qubits()) + " qubits, plan has " +
                                std::to_string(plan_.num_wires) + " wires.");
            }
            if (!input.is_normalized(tol::kNumerical)) {
                throw PlanError("Input state is not normalized.");
            }
            load_input(input);
            size_t limit = hooks_.stop_after.value_or(plan_.steps.size());
            for (size_t i = 0; i < plan_.steps.size() && i < limit; i++) {
                execute(plan_.steps[i], i);
                if (config_.test_every > 0 && (i + 1) % config_.test_every == 0) {
                    interleave_test(i, out);
                }
            }
            Json fin{{"type", "final_frame"}, {"frame", frame_.to_string()}};
            transcript_.add_secret(std::move(fin));
            out.raw = reg_;
            out.output = recover_output(reg_, frame_).scaled(std::exp(Complex(0, plan_.global_phase.radians())));
        } catch (const PlanError &e) {
            out.status = ExitCode::kPlanError;
            out.error = e.what();
        } catch (const ProtocolError &e) {
            out.status = e.code();
            out.error = e.what();
        } catch (const std::invalid_argument &e) {
            out.status = ExitCode::kPlanError;
            out.error = e.what();
        }
        out.frame = frame_;
        out.transcript = std::move(transcript_);
        out.tests = std::move(tests_log_);
        out.delegations = delegations_;
        return out;
    }

   private:
    AdversaryModel adversary_for(PartyRole role) const {
        for (const AdversaryModel &a : config_.adversaries) {
            if (a.target == role) {
                return a;
            }
        }
        return AdversaryModel::honest(role);
    }

    const Server &server(PartyRole role) const {
        return role == PartyRole::kServer1 ? bob1_ : bob2_;
    }

    void write_header() {
        Json adv = Json::array();
        for (const AdversaryModel &a : config_.adversaries) {
            adv.push_back(a.to_string());
        }
        Json h{{"type", "header"},
               {"version", GTUBQC_VERSION},
               {"mode", std::string(angle_mode_name(plan_.mode))},
               {"wires", plan_.num_wires},
               {"seed", config_.seed},
               {"test_every", config_.test_every},
               {"adversaries", std::move(adv)}};
        transcript_.set_header(std::move(h));
        Json steps = Json::array();
        for (const PlanStep &s : plan_.steps) {
            steps.push_back(step_to_string(s));
        }
        transcript_.add_secret(
            Json{{"type", "plan"}, {"plan", std::move(steps)}, {"global_phase", plan_.global_phase.to_string()}});
    }

    void load_input(const StateVector &input) {
        std::vector<std::string> qubits;
        for (size_t w = 0; w < plan_.num_wires; w++) {
            labels_.push_back(transcript_.new_qubit());
            qubits.push_back(labels_.back());
        }
        transcript_.qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, qubits);
        PauliFrame pad(plan_.num_wires);
        Json pads = Json::array();
        for (size_t w = 0; w < plan_.num_wires; w++) {
            PauliBits bits{static_cast<uint8_t>(keys_.bit()), static_cast<uint8_t>(keys_.bit())};
            if (hooks_.pad) {
                if (auto forced = hooks_.pad(w)) {
                    bits = *forced;
                }
            }
            pad.set(w, bits);
            pads.push_back(Json{{"x", bits.x}, {"z", bits.z}});
        }
        reg_ = StateVector::unnormalized(pad.matrix() * input.amplitudes());
        frame_ = pad;
        transcript_.add_secret(Json{{"type", "input_pad"}, {"pad", std::move(pads)}});
    }

    std::optional<BellCode> forced_outcome() {
        size_t n = measurements_++;
        if (hooks_.outcome) {
            return hooks_.outcome(n);
        }
        return std::nullopt;
    }

    void notify(PartyRole srv, bool decoy, const StateVector &joint, std::vector<size_t> held) {
        size_t id = transfers_++;
        if (hooks_.on_transfer) {
            hooks_.on_transfer(HeldState{id, srv, decoy, &joint, std::move(held)});
        }
    }

    BellCode receive_report(PartyRole srv, const std::string &text) {
        transcript_.outcome_report(srv, PartyRole::kClient, {text});
        return parse_reported_outcome(text, srv);
    }

    struct Delegated {
        BellCode code;
        BellCode reported;
        BellCode byproduct;
        bool sign;
    };

    /// One teleported rotation on `wire` by `srv`; merges the reported by-product into the frame.
    Delegated delegate_rotation(PartyRole srv, size_t wire, Axis axis, const Angle &instructed, Json secret) {
        BellCode code = random_code(center_);
        std::string a1 = transcript_.new_qubit();
        std::string a2 = transcript_.new_qubit();
        transcript_.qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, {a1, a2});
        transcript_.qubit_transfer(PartyRole::kClient, srv, {labels_[wire], a1});
        size_t n = reg_.num_qubits();
        if (hooks_.on_transfer) {
            StateVector joint = append_bell_pair(reg_, code);
            notify(srv, false, joint, {wire, n});
        } else {
            transfers_++;
        }
        transcript_.angle_instruction(PartyRole::kClient, srv, instructed, {labels_[wire]}, axis, false);

        const Server &s = server(srv);
        RotationGate applied{axis, s.applied_angle(instructed)};
        std::optional<BellCode> forced = forced_outcome();
        TeleportResult r = forced ? teleport_rotation_with_outcome(reg_, wire, code, applied, *forced)
                                  : teleport_rotation(reg_, wire, code, applied, meas_);
        BellCode reported = receive_report(srv, s.report(r.step.outcome));
        reg_ = std::move(r.state);
        labels_[wire] = a2;
        delegations_++;

        Delegated d{code, reported, byproduct_of(code, reported), byproduct_sign(code, reported)};
        frame_.merge_byproduct(wire, d.byproduct.b1, d.byproduct.b2);
        if (d.sign) {
            frame_.add_phase_quarter_turns(2);
        }
        secret["type"] = "teleport_step";
        secret["server"] = std::string(role_name(srv));
        secret["wire"] = wire;
        secret["ancilla_code"] = code_json(code);
        secret["outcome"] = code_json(reported);
        secret["byproduct"] = code_json(d.byproduct);
        secret["sign"] = d.sign;
        secret["frame"] = frame_.to_string();
        transcript_.add_secret(std::move(secret));
        return d;
    }

    void blind_rotation(size_t wire, Axis axis, const Angle &theta, PartyRole first, const std::string &purpose) {
        SignBit s = adaptive_sign(frame_, wire, axis);
        bool r1 = keys_.bit();
        int xi_index = static_cast<int>(keys_.below(8));
        int k = keys_.bit() ? 2 : 1;
        size_t index = encrypted_++;
        if (hooks_.r1) {
            if (auto forced = hooks_.r1(index)) {
                r1 = *forced;
            }
        }
        EncryptedAngle enc = encrypt_angle_with_key(theta, r1, s, xi_index, plan_.mode);

        Json first_secret{{"purpose", purpose},
                          {"theta", theta.to_string()},
                          {"r1", r1},
                          {"r2", s.value},
                          {"xi", enc.xi.to_string()}};
        Delegated b1 = delegate_rotation(first, wire, axis, enc.theta_prime, std::move(first_secret));

        Cancellation cancel = schedule_cancellation(enc.xi, k);
        SignBit sb = byproduct_axis_sign(b1.byproduct, axis);
        ReducedAngle c = reduce_mod_2pi(cancel.angle().signed_by(sb.value));
        Json second_secret{{"purpose", "cancellation"}, {"xi", enc.xi.to_string()}, {"k", k}, {"r2", sb.value}};
        delegate_rotation(other_server(first), wire, axis, c.reduced, std::move(second_secret));

        int64_t n = k + (r1 ? 1 : 0);
        int64_t flips = enc.wraps + c.wraps + (s.value ? n : 0);
        frame_.add_phase_quarter_turns(static_cast<int>(2 * (((flips % 2) + 2) % 2)));
        PiRotationPauli pi = pi_rotation_pauli(axis);
        for (int64_t i = 0; i < n; i++) {
            frame_.absorb_right(wire, pi.pauli.x, pi.pauli.z);
            frame_.add_phase_quarter_turns(pi.quarter_turns);
        }
    }

    /// Ideal Rz(angle) on `wire`. The count of delegations is fixed (three grid steps, zeros
    /// included, or one continuous step) so it carries no frame information.
    void compensate(size_t wire, const Angle &angle) {
        ReducedAngle r = reduce_mod_2pi(angle);
        frame_.add_phase_quarter_turns(static_cast<int>(2 * (((r.wraps % 2) + 2) % 2)));
        if (plan_.mode == AngleMode::kContinuous) {
            blind_rotation(wire, Axis::kZ, r.reduced, routing_.route_single().executing, "compensation");
            return;
        }
        int k = r.reduced.grid_index();
        for (int bit : {4, 2, 1}) {
            Angle a = (k & bit) ? Angle::pi(bit, 4) : Angle::zero();
            blind_rotation(wire, Axis::kZ, a, routing_.route_single().executing, "compensation");
        }
    }

    /// rho of the push rule: x_c ? (-1)^{x_t} phi : 0.
    Angle push_residual(size_t c, size_t t, const Angle &phi) const {
        PauliBits pc = frame_.at(c);
        PauliBits pt = frame_.at(t);
        return pc.x ? phi.signed_by(pt.x) : Angle::zero();
    }

    struct ControlledOut {
        Delegated control;
        Delegated target;
    };

    ControlledOut delegate_controlled(PartyRole srv, size_t c, size_t t, const Angle &instructed, Json secret) {
        std::array<BellCode, 2> codes{random_code(center_), random_code(center_)};
        std::string a1 = transcript_.new_qubit();
        std::string a2 = transcript_.new_qubit();
        std::string b1 = transcript_.new_qubit();
        std::string b2 = transcript_.new_qubit();
        transcript_.qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, {a1, a2});
        transcript_.qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, {b1, b2});
        transcript_.qubit_transfer(PartyRole::kClient, srv, {labels_[c], a1, labels_[t], b1});
        size_t n = reg_.num_qubits();
        if (hooks_.on_transfer) {
            StateVector joint = append_bell_pair(append_bell_pair(reg_, codes[0]), codes[1]);
            notify(srv, false, joint, {c, n, t, n + 2});
        } else {
            transfers_++;
        }
        transcript_.angle_instruction(PartyRole::kClient, srv, instructed, {labels_[c], labels_[t]}, Axis::kZ, true);

        const Server &s = server(srv);
        std::array<std::optional<BellCode>, 2> forced{forced_outcome(), forced_outcome()};
        ControlledTeleportResult r =
            teleport_controlled(reg_, c, t, codes, Axis::kZ, s.applied_angle(instructed), meas_, forced);
        std::string rc = s.report(r.steps[0].outcome);
        std::string rt = s.report(r.steps[1].outcome);
        transcript_.outcome_report(srv, PartyRole::kClient, {rc, rt});
        BellCode oc = parse_reported_outcome(rc, srv);
        BellCode ot = parse_reported_outcome(rt, srv);
        reg_ = std::move(r.state);
        labels_[c] = a2;
        labels_[t] = b2;
        delegations_++;

        ControlledOut out{{codes[0], oc, byproduct_of(codes[0], oc), byproduct_sign(codes[0], oc)},
                          {codes[1], ot, byproduct_of(codes[1], ot), byproduct_sign(codes[1], ot)}};
        for (auto [wire, d] : {std::pair{c, out.control}, std::pair{t, out.target}}) {
            frame_.merge_byproduct(wire, d.byproduct.b1, d.byproduct.b2);
            if (d.sign) {
                frame_.add_phase_quarter_turns(2);
            }
        }
        secret["type"] = "teleport_step";
        secret["server"] = std::string(role_name(srv));
        secret["wires"] = {c, t};
        secret["ancilla_code"] = {code_json(codes[0]), code_json(codes[1])};
        secret["outcome"] = {code_json(oc), code_json(ot)};
        secret["byproduct"] = {code_json(out.control.byproduct), code_json(out.target.byproduct)};
        secret["sign"] = {out.control.sign, out.target.sign};
        secret["frame"] = frame_.to_string();
        transcript_.add_secret(std::move(secret));
        return out;
    }

    void decoy(PartyRole srv) {
        BellCode code = random_code(center_);
        Angle angle = random_grid_angle(keys_);
        std::string d1 = transcript_.new_qubit();
        std::string d2 = transcript_.new_qubit();
        transcript_.qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, {d1, d2});
        transcript_.qubit_transfer(PartyRole::kClient, srv, {d1, d2});
        StateVector pair = bell_state(code);
        notify(srv, true, pair, {0, 1});
        transcript_.angle_instruction(PartyRole::kClient, srv, angle, {d1}, Axis::kZ, false);
        const Server &s = server(srv);
        std::array<size_t, 1> w{0};
        StateVector rotated = apply_unitary(
            pair, Unitary::from_matrix(rotation_matrix(Axis::kZ, s.applied_angle(angle).radians())), w);
        BellMeasurement m = bell_measure(rotated, 0, 1, meas_);
        receive_report(srv, s.report(m.outcome));
        transcript_.add_secret(Json{{"type", "decoy"},
                                    {"server", std::string(role_name(srv))},
                                    {"ancilla_code", code_json(code)},
                                    {"theta", angle.to_string()}});
    }

    void blind_controlled(const BlindControlledRotation &step, const RouteDecision &route) {
        size_t c = step.control;
        size_t t = step.target;
        PartyRole x = route.executing;
        PartyRole y = other_server(x);

        bool sigma_a = frame_.at(c).x ^ frame_.at(t).x;
        int xi_index = static_cast<int>(keys_.below(8));
        Angle xi = Angle::pi(xi_index, 4);
        ReducedAngle phi_a = reduce_mod_2pi(step.theta.signed_by(sigma_a) + xi);
        Angle rho = push_residual(c, t, phi_a.reduced);
        Angle offset = (xi - Angle::pi(2 * phi_a.wraps)).signed_by(sigma_a);
        delegate_controlled(x,
                            c,
                            t,
                            phi_a.reduced,
                            Json{{"purpose", "controlled"},
                                 {"theta", step.theta.to_string()},
                                 {"r2", sigma_a},
                                 {"xi", xi.to_string()}});
        decoy(y);

        bool sigma_b = frame_.at(c).x ^ frame_.at(t).x;
        ReducedAngle phi_b = reduce_mod_2pi((Angle::pi(2) - offset).signed_by(sigma_b));
        rho = rho + push_residual(c, t, phi_b.reduced);
        delegate_controlled(y,
                            c,
                            t,
                            phi_b.reduced,
                            Json{{"purpose", "controlled_cancellation"}, {"xi", xi.to_string()}, {"r2", sigma_b}});
        decoy(x);

        if (((1 + phi_b.wraps) % 2 + 2) % 2) {
            frame_.absorb_right(c, false, true);
        }
        compensate(t, -rho);
    }

    void execute(const PlanStep &step, size_t index) {
        RouteDecision route = route_step(step, routing_, routes_);
        if (const auto *r = std::get_if<BlindRotation>(&step)) {
            blind_rotation(r->wire, r->axis, r->theta, route.executing, "rotation");
        } else {
            blind_controlled(std::get<BlindControlledRotation>(step), route);
        }
        (void)index;
    }

    void interleave_test(size_t after_step, RunResult &out) {
        TestKind kind = tests_.bit() ? TestKind::kControlled : TestKind::kRotation;
        TestSetup setup = random_test_setup(kind, tests_);
        TestVerdict v = run_test(setup, bob1_, bob2_, tests_, &transcript_);
        tests_log_.push_back({after_step, std::string(test_kind_name(kind)), v.passed});
        (void)out;
        if (!v.passed) {
            throw ProtocolError(ExitCode::kAbort,
                                "Test session after step " + std::to_string(after_step) +
                                    " failed: reported outcomes have honest probability 0.");
        }
    }

    const ComputationPlan &plan_;
    const SessionConfig &config_;
    const RunHooks &hooks_;
    Rng root_;
    Rng keys_;
    Rng routes_;
    Rng center_;
    Rng meas_;
    Rng tests_;
    Server bob1_;
    Server bob2_;
    RoutingPolicy routing_;
    StateVector reg_;
    PauliFrame frame_;
    std::vector<std::string> labels_;
    Transcript transcript_;
    std::vector<InterleavedTest> tests_log_;
    size_t delegations_ = 0;
    size_t transfers_ = 0;
    size_t measurements_ = 0;
    size_t encrypted_ = 0;
};

}  // namespace

RunResult gtubqc::run_computation(const ComputationPlan &plan,
                                  const StateVector &input,
                                  const SessionConfig &config,
                                  const RunHooks &hooks) {
    Session session(plan, config, hooks);
    return session.run(input);
}
