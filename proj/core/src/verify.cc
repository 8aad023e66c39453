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

#include "gtubqc/verify.h"

#include <algorithm>
#include <cmath>

using namespace gtubqc;

PairedRotation gtubqc::paired_rotation_invariance(BellCode code, Axis axis, const Angle &theta) {
    // (U (x) P U* P^dagger) (I (x) P)|phi+> = (I (x) P)|phi+>.
    PauliFrame p(1);
    p.set(0, {code.b1, code.b2});
    bool conj_flips = axis != Axis::kY;
    bool negate = conj_flips ^ adaptive_sign(p, 0, axis).value;
    return {{axis, theta}, {axis, theta.signed_by(negate)}};
}

namespace {

void joint_rec(const Vector &v,
               std::vector<size_t> live,
               const std::vector<std::pair<size_t, size_t>> &pairs,
               size_t depth,
               size_t index,
               std::vector<double> &out) {
    if (depth == pairs.size()) {
        out[index] = v.squaredNorm();
        return;
    }
    auto pos = [&](size_t wire) {
        return static_cast<size_t>(std::find(live.begin(), live.end(), wire) - live.begin());
    };
    size_t a = pos(pairs[depth].first);
    size_t b = pos(pairs[depth].second);
    if (a == live.size() || b == live.size()) {
        throw std::invalid_argument("Bell pair refers to a wire already measured.");
    }
    StateVector s = StateVector::unnormalized(v);
    std::vector<size_t> rest;
    for (size_t i = 0; i < live.size(); i++) {
        if (i != a && i != b) {
            rest.push_back(live[i]);
        }
    }
    for (BellCode code : BellCode::all()) {
        Vector post = project_bell(s, a, b, code);
        joint_rec(post, rest, pairs, depth + 1, index * 4 + static_cast<size_t>(code.index()), out);
    }
}

std::string code_list(const std::vector<BellCode> &codes) {
    std::string s;
    for (const BellCode &c : codes) {
        s += (s.empty() ? "" : ",") + c.to_string();
    }
    return s;
}

}  // namespace

std::vector<double> gtubqc::joint_bell_distribution(const StateVector &state,
                                                    const std::vector<std::pair<size_t, size_t>> &pairs) {
    std::vector<size_t> live(state.num_qubits());
    for (size_t i = 0; i < live.size(); i++) {
        live[i] = i;
    }
    size_t total = 1;
    for (size_t i = 0; i < pairs.size(); i++) {
        total *= 4;
    }
    std::vector<double> out(total, 0.0);
    joint_rec(state.amplitudes(), live, pairs, 0, 0, out);
    return out;
}

std::string_view gtubqc::test_kind_name(TestKind kind) {
    return kind == TestKind::kRotation ? "rotation" : "controlled";
}

TestSetup gtubqc::random_test_setup(TestKind kind, Rng &rng) {
    TestSetup s;
    s.kind = kind;
    if (kind == TestKind::kRotation) {
        s.axis = static_cast<Axis>(rng.below(3));
        s.theta = random_grid_angle(rng);
        for (int i = 0; i < 2; i++) {
            s.codes.push_back(BellCode::from_index(static_cast<int>(rng.below(4))));
        }
        return s;
    }
    s.axis = Axis::kZ;
    s.theta = random_grid_angle(rng);
    s.codes.push_back(BellCode{0, static_cast<uint8_t>(rng.bit())});
    for (int i = 0; i < 3; i++) {
        s.codes.push_back(BellCode::from_index(static_cast<int>(rng.below(4))));
    }
    return s;
}

namespace {

struct Wiring {
    size_t qubits;
    std::vector<std::pair<size_t, size_t>> pairs;
};

/// Frozen diagrams.
/// rotation:   pairs (0,1) (2,3); Bob1 = {0, 2}, Bob2 = {1, 3}.
/// controlled: A=(0,1) B=(2,3) C=(4,5) D=(6,7); Bob1 = {0, 2, 4, 6}, Bob2 = {1, 3, 5, 7}.
Wiring wiring(TestKind kind) {
    if (kind == TestKind::kRotation) {
        return {4, {{0, 2}, {1, 3}}};
    }
    return {8, {{0, 4}, {2, 6}, {1, 5}, {3, 7}}};
}

void check_setup(const TestSetup &setup) {
    size_t want = setup.kind == TestKind::kRotation ? 2 : 4;
    if (setup.codes.size() != want) {
        throw std::invalid_argument("Test setup needs " + std::to_string(want) + " codes.");
    }
    if (setup.kind == TestKind::kControlled && setup.codes[0].b1 != 0) {
        throw std::invalid_argument("Controlled test needs a phi-type first pair (00 or 01).");
    }
}

/// Angle Bob2 is instructed to use.
Angle second_angle(const TestSetup &setup) {
    BellCode paired = setup.kind == TestKind::kRotation ? setup.codes[0] : setup.codes[1];
    return paired_rotation_invariance(paired, setup.axis, setup.theta).op2.angle;
}

StateVector test_state(const TestSetup &setup, const Angle &angle1, const Angle &angle2) {
    StateVector s = StateVector::basis(0, 0);
    for (const BellCode &c : setup.codes) {
        s = s.tensor(bell_state(c));
    }
    if (setup.kind == TestKind::kRotation) {
        std::array<size_t, 1> w1{0};
        std::array<size_t, 1> w2{1};
        s = apply_unitary(s, Unitary::from_matrix(rotation_matrix(setup.axis, angle1.radians())), w1);
        s = apply_unitary(s, Unitary::from_matrix(rotation_matrix(setup.axis, angle2.radians())), w2);
        return s;
    }
    std::array<size_t, 2> w1{0, 2};
    std::array<size_t, 2> w2{1, 3};
    s = apply_unitary(s, controlled_rotation_matrix(setup.axis, angle1), w1);
    s = apply_unitary(s, controlled_rotation_matrix(setup.axis, angle2), w2);
    return s;
}

size_t outcomes_per_server(TestKind kind) {
    return kind == TestKind::kRotation ? 1 : 2;
}

std::vector<BellCode> decode(size_t index, size_t count) {
    std::vector<BellCode> out(count);
    for (size_t i = count; i-- > 0;) {
        out[i] = BellCode::from_index(static_cast<int>(index % 4));
        index /= 4;
    }
    return out;
}

size_t encode(const std::vector<BellCode> &codes) {
    size_t index = 0;
    for (const BellCode &c : codes) {
        index = index * 4 + static_cast<size_t>(c.index());
    }
    return index;
}

/// Reported tuple for a true tuple, or nullopt when a server's report is malformed.
std::optional<size_t> report_index(const std::vector<BellCode> &actual, size_t per, const Server &b1, const Server &b2) {
    std::vector<BellCode> rep;
    for (size_t i = 0; i < actual.size(); i++) {
        auto r = (i < per ? b1 : b2).reported_code(actual[i]);
        if (!r) {
            return std::nullopt;
        }
        rep.push_back(*r);
    }
    return encode(rep);
}

constexpr double kZeroProbability = 1e-12;

}  // namespace

TestOracle gtubqc::test_oracle(const TestSetup &setup, const Server &bob1, const Server &bob2) {
    check_setup(setup);
    Wiring w = wiring(setup.kind);
    Angle a2 = second_angle(setup);
    TestOracle o;
    o.honest = joint_bell_distribution(test_state(setup, setup.theta, a2), w.pairs);
    std::vector<double> adv =
        joint_bell_distribution(test_state(setup, bob1.applied_angle(setup.theta), bob2.applied_angle(a2)), w.pairs);
    o.reported.assign(adv.size(), 0.0);
    o.detection_probability = 0;
    size_t per = outcomes_per_server(setup.kind);
    for (size_t i = 0; i < adv.size(); i++) {
        if (adv[i] <= kZeroProbability) {
            continue;
        }
        auto r = report_index(decode(i, w.pairs.size()), per, bob1, bob2);
        if (!r) {
            o.detection_probability += adv[i];
            continue;
        }
        o.reported[*r] += adv[i];
        if (o.honest[*r] <= kZeroProbability) {
            o.detection_probability += adv[i];
        }
    }
    return o;
}

TestVerdict gtubqc::run_test(const TestSetup &setup, const Server &bob1, const Server &bob2, Rng &rng, Transcript *log) {
    check_setup(setup);
    Wiring w = wiring(setup.kind);
    Angle a2 = second_angle(setup);
    TestOracle oracle = test_oracle(setup, bob1, bob2);

    std::vector<double> adv =
        joint_bell_distribution(test_state(setup, bob1.applied_angle(setup.theta), bob2.applied_angle(a2)), w.pairs);
    double u = rng.uniform();
    size_t pick = adv.size() - 1;
    double acc = 0;
    for (size_t i = 0; i < adv.size(); i++) {
        acc += adv[i];
        if (u < acc) {
            pick = i;
            break;
        }
    }
    while (adv[pick] <= 0 && pick > 0) {
        pick--;
    }
    std::vector<BellCode> actual = decode(pick, w.pairs.size());
    size_t per = outcomes_per_server(setup.kind);

    std::vector<std::string> texts;
    for (size_t i = 0; i < actual.size(); i++) {
        texts.push_back((i < per ? bob1 : bob2).report(actual[i]));
    }

    if (log) {
        std::vector<std::string> labels;
        for (size_t i = 0; i < w.qubits; i++) {
            labels.push_back(log->new_qubit());
        }
        for (size_t p = 0; p < w.qubits; p += 2) {
            log->qubit_transfer(PartyRole::kTrustedCenter, PartyRole::kClient, {labels[p], labels[p + 1]});
        }
        bool controlled = setup.kind == TestKind::kControlled;
        std::vector<std::string> held1, held2;
        for (size_t i = 0; i < w.qubits; i++) {
            (i % 2 == 0 ? held1 : held2).push_back(labels[i]);
        }
        std::vector<std::string> target1 = controlled ? std::vector<std::string>{labels[0], labels[2]}
                                                      : std::vector<std::string>{labels[0]};
        std::vector<std::string> target2 = controlled ? std::vector<std::string>{labels[1], labels[3]}
                                                      : std::vector<std::string>{labels[1]};
        log->qubit_transfer(PartyRole::kClient, PartyRole::kServer1, held1);
        log->angle_instruction(
            PartyRole::kClient, PartyRole::kServer1, reduce_mod_2pi(setup.theta).reduced, target1, setup.axis, controlled);
        log->qubit_transfer(PartyRole::kClient, PartyRole::kServer2, held2);
        log->angle_instruction(
            PartyRole::kClient, PartyRole::kServer2, reduce_mod_2pi(a2).reduced, target2, setup.axis, controlled);
        log->outcome_report(PartyRole::kServer1,
                            PartyRole::kClient,
                            std::vector<std::string>(texts.begin(), texts.begin() + static_cast<long>(per)));
        log->outcome_report(PartyRole::kServer2,
                            PartyRole::kClient,
                            std::vector<std::string>(texts.begin() + static_cast<long>(per), texts.end()));
    }

    std::vector<BellCode> reported;
    for (size_t i = 0; i < texts.size(); i++) {
        reported.push_back(parse_reported_outcome(texts[i], i < per ? PartyRole::kServer1 : PartyRole::kServer2));
    }
    double hp = oracle.honest[encode(reported)];

    TestVerdict v;
    v.kind = setup.kind;
    v.passed = hp > kZeroProbability;
    v.axis = setup.axis;
    v.theta = setup.theta;
    v.codes = setup.codes;
    v.reported = texts;
    v.honest_probability = hp;
    v.detection_probability = oracle.detection_probability;
    if (log) {
        log->add_secret(Json{{"type", "test"},
                             {"purpose", std::string(test_kind_name(setup.kind))},
                             {"theta", setup.theta.to_string()},
                             {"ancilla_code", code_list(setup.codes)},
                             {"outcome", code_list(actual)},
                             {"passed", v.passed}});
    }
    return v;
}

TestVerdict gtubqc::rotation_test(
    const Server &bob1, const Server &bob2, Axis axis, const Angle &theta, Rng &rng, Transcript *log) {
    TestSetup s = random_test_setup(TestKind::kRotation, rng);
    s.axis = axis;
    s.theta = theta;
    return run_test(s, bob1, bob2, rng, log);
}

TestVerdict gtubqc::controlled_test(
    const Server &bob1, const Server &bob2, Axis axis, const Angle &theta, Rng &rng, Transcript *log) {
    TestSetup s = random_test_setup(TestKind::kControlled, rng);
    s.axis = axis;
    s.theta = theta;
    return run_test(s, bob1, bob2, rng, log);
}

bool DetectionStats::within_3_sigma() const {
    double diff = std::abs(static_cast<double>(detections) - expected);
    return diff <= 3 * std::sqrt(variance) + 1e-9;
}

DetectionStats gtubqc::detection_statistics(
    TestKind kind, const Server &bob1, const Server &bob2, size_t trials, Rng &rng) {
    DetectionStats st;
    for (size_t i = 0; i < trials; i++) {
        TestSetup s = random_test_setup(kind, rng);
        double p = test_oracle(s, bob1, bob2).detection_probability;
        st.expected += p;
        st.variance += p * (1 - p);
        st.trials++;
        try {
            if (!run_test(s, bob1, bob2, rng).passed) {
                st.detections++;
            }
        } catch (const ProtocolError &) {
            st.detections++;
        }
    }
    return st;
}

InputAuditReport gtubqc::blindness_audit_inputs(const ComputationPlan &plan,
                                                const StateVector &input,
                                                std::optional<size_t> max_plan_steps,
                                                size_t r1_bits,
                                                uint64_t seed) {
    size_t n = plan.num_wires;
    if (input.num_qubits() != n) {
        throw PlanError("Audit input does not match the plan width.");
    }
    struct Acc {
        PartyRole server;
        bool decoy;
        Matrix sum;
        size_t samples = 0;
    };
    std::vector<Acc> acc;
    SessionConfig config;
    config.seed = seed;
    config.test_every = 0;

    size_t pads = size_t{1} << (2 * n);
    size_t keys = size_t{1} << r1_bits;
    for (size_t pad = 0; pad < pads; pad++) {
        for (size_t key = 0; key < keys; key++) {
            RunHooks hooks;
            hooks.stop_after = max_plan_steps;
            hooks.pad = [&](size_t w) -> std::optional<PauliBits> {
                size_t bits = (pad >> (2 * w)) & 3;
                return PauliBits{static_cast<uint8_t>(bits >> 1), static_cast<uint8_t>(bits & 1)};
            };
            hooks.r1 = [&](size_t i) -> std::optional<bool> {
                if (i < r1_bits) {
                    return ((key >> i) & 1) != 0;
                }
                return std::nullopt;
            };
            hooks.outcome = [&](size_t i) -> std::optional<BellCode> {
                return BellCode::from_index(static_cast<int>(mix_seed(seed ^ (i * 0x9e3779b97f4a7c15ull)) & 3));
            };
            hooks.on_transfer = [&](const HeldState &h) {
                DensityMatrix rho = partial_trace(DensityMatrix::projector(*h.joint), h.held);
                Matrix m = rho.matrix();
                if (h.decoy) {
                    // The pair's code is uniform: average the four Bell states it could be.
                    Matrix avg = Matrix::Zero(m.rows(), m.cols());
                    for (BellCode c : BellCode::all()) {
                        Matrix p = kron(pauli::I(), (c.b1 ? pauli::X() : pauli::I()) * (c.b2 ? pauli::Z() : pauli::I()));
                        avg += p * m * p.adjoint();
                    }
                    m = avg / 4.0;
                }
                if (h.delegation >= acc.size()) {
                    acc.resize(h.delegation + 1, Acc{h.server, h.decoy, Matrix::Zero(m.rows(), m.cols()), 0});
                }
                Acc &a = acc[h.delegation];
                if (a.sum.rows() != m.rows() || a.server != h.server) {
                    throw std::logic_error("Audit runs diverged in their delegation sequence.");
                }
                a.sum += m;
                a.samples++;
            };
            RunResult r = run_computation(plan, input, config, hooks);
            if (r.status != ExitCode::kOk) {
                throw PlanError("Audit run failed: " + r.error);
            }
        }
    }

    InputAuditReport report;
    for (size_t i = 0; i < acc.size(); i++) {
        const Acc &a = acc[i];
        size_t q = 0;
        while ((size_t{1} << q) < static_cast<size_t>(a.sum.rows())) {
            q++;
        }
        DensityMatrix avg = DensityMatrix::from_matrix(a.sum / static_cast<double>(a.samples));
        double d = trace_distance(avg, DensityMatrix::maximally_mixed(q));
        report.steps.push_back({i, a.server, a.decoy, d, a.samples});
        report.max_distance = std::max(report.max_distance, d);
    }
    return report;
}

namespace {

std::array<int, 8> count_angles(const std::vector<Angle> &angles) {
    std::array<int, 8> c{};
    for (const Angle &a : angles) {
        c[static_cast<size_t>(reduce_mod_2pi(a).reduced.grid_index())]++;
    }
    return c;
}

bool is_uniform(const std::array<int, 8> &c) {
    return std::all_of(c.begin(), c.end(), [&](int v) { return v == c[0]; });
}

void encrypted_rows(const std::string &step, const std::string &delegation, const Angle &theta,
                    std::vector<AngleAuditRow> &rows) {
    for (int r2 = 0; r2 < 2; r2++) {
        std::vector<Angle> seen;
        for (int r1 = 0; r1 < 2; r1++) {
            for (int xi = 0; xi < 8; xi++) {
                seen.push_back(encrypt_angle_with_key(theta, r1 != 0, SignBit{r2 != 0}, xi).theta_prime);
            }
        }
        auto c = count_angles(seen);
        rows.push_back({step, delegation, "theta=" + theta.to_string() + " r2=" + std::to_string(r2), 16, c,
                        is_uniform(c)});
    }
    for (int sb = 0; sb < 2; sb++) {
        std::vector<Angle> seen;
        for (int k = 1; k <= 2; k++) {
            for (int xi = 0; xi < 8; xi++) {
                seen.push_back(schedule_cancellation(Angle::pi(xi, 4), k).angle().signed_by(sb != 0));
            }
        }
        auto c = count_angles(seen);
        rows.push_back({step, "cancellation", "sign=" + std::to_string(sb), 16, c, is_uniform(c)});
    }
}

}  // namespace

AngleAuditReport gtubqc::blindness_audit_angles(const ComputationPlan &plan) {
    if (plan.mode != AngleMode::kGrid) {
        throw PlanError(
            "Angle audit needs grid mode: in continuous mode encrypted angles are not uniform, so no blindness claim "
            "is made.");
    }
    validate_plan(plan);
    AngleAuditReport report;
    for (const PlanStep &step : plan.steps) {
        std::string name = step_to_string(step);
        if (const auto *r = std::get_if<BlindRotation>(&step)) {
            encrypted_rows(name, "encrypted_rotation", r->theta, report.rows);
            continue;
        }
        const auto &c = std::get<BlindControlledRotation>(step);
        for (int sa = 0; sa < 2; sa++) {
            std::vector<Angle> a_seen;
            std::array<std::vector<Angle>, 2> b_seen;
            for (int xi = 0; xi < 8; xi++) {
                Angle x = Angle::pi(xi, 4);
                ReducedAngle phi_a = reduce_mod_2pi(c.theta.signed_by(sa != 0) + x);
                a_seen.push_back(phi_a.reduced);
                Angle offset = (x - Angle::pi(2 * phi_a.wraps)).signed_by(sa != 0);
                for (int sb = 0; sb < 2; sb++) {
                    b_seen[sb].push_back((Angle::pi(2) - offset).signed_by(sb != 0));
                }
            }
            auto ca = count_angles(a_seen);
            report.rows.push_back({name, "controlled", "sign=" + std::to_string(sa), 8, ca, is_uniform(ca)});
            for (int sb = 0; sb < 2; sb++) {
                auto cb = count_angles(b_seen[sb]);
                report.rows.push_back({name,
                                       "controlled_cancellation",
                                       "sign_a=" + std::to_string(sa) + " sign_b=" + std::to_string(sb),
                                       8,
                                       cb,
                                       is_uniform(cb)});
            }
        }
        for (int k = 0; k < 4; k++) {
            Angle t = k == 0 ? Angle::zero() : Angle::pi(1, 1 << (k - 1));
            encrypted_rows(name, "compensation", t, report.rows);
        }
    }

    for (const Angle &t : {Angle::pi(1, 4), Angle::pi(1, 2), Angle::pi(1)}) {
        std::vector<Angle> seen;
        for (int r1 = 0; r1 < 2; r1++) {
            for (int xi = 0; xi < 8; xi++) {
                seen.push_back(encrypt_angle_with_key(t, r1 != 0, SignBit{false}, xi).theta_prime);
            }
        }
        report.theta_marginals[t.to_string()] = count_angles(seen);
    }
    report.max_tv = 0;
    for (const auto &[ka, a] : report.theta_marginals) {
        for (const auto &[kb, b] : report.theta_marginals) {
            double tv = 0;
            for (size_t i = 0; i < 8; i++) {
                tv += std::abs(a[i] - b[i]) / 16.0;
            }
            report.max_tv = std::max(report.max_tv, tv / 2);
        }
    }
    report.all_uniform = std::all_of(report.rows.begin(), report.rows.end(), [](const AngleAuditRow &r) {
        return r.uniform;
    });
    return report;
}
