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

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gtubqc/plan_file.h"
#include "gtubqc/qft.h"
#include "gtubqc/session.h"
#include "gtubqc/verify.h"

namespace gtubqc::cli {
namespace {

struct Common {
    std::optional<uint64_t> seed;
    std::string output;
};

/// GTUBQC_SEED beats --seed, which beats the plan's seed; otherwise a fresh seed is drawn and reported.
uint64_t resolve_seed(const std::optional<uint64_t> &flag, const std::optional<uint64_t> &plan) {
    if (const char *env = std::getenv("GTUBQC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw PlanError(std::string("GTUBQC_SEED is not an integer: ") + env);
        }
    }
    if (flag) {
        return *flag;
    }
    if (plan) {
        return *plan;
    }
    std::random_device rd;
    return (uint64_t{rd()} << 32) ^ rd();
}

Json stamp(Json config) {
    Json report{{"version", GTUBQC_VERSION}, {"config_hash", config_hash(config)}, {"config", config}};
    return report;
}

void emit(const Json &report, const std::string &path, std::ostream &out) {
    std::string text = report.dump(2) + "\n";
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw PlanError("Cannot write " + path + ".");
    }
    f << text;
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw PlanError("Cannot write " + path + ".");
    }
    f << text;
}

Json state_json(const StateVector &s) {
    Json a = Json::array();
    for (size_t i = 0; i < s.dim(); i++) {
        a.push_back(Json::array({s[i].real(), s[i].imag()}));
    }
    return a;
}

std::vector<AdversaryModel> parse_adversaries(const std::vector<std::string> &specs) {
    std::vector<AdversaryModel> out;
    for (const std::string &s : specs) {
        try {
            out.push_back(AdversaryModel::parse(s));
        } catch (const std::invalid_argument &e) {
            throw PlanError(e.what());
        }
    }
    return out;
}

Server server_for(PartyRole role, const std::vector<AdversaryModel> &models) {
    for (const AdversaryModel &m : models) {
        if (m.target == role) {
            return Server(role, m);
        }
    }
    return Server(role);
}

Json triple_json(const EulerTriple &t) {
    return Json{{"order", std::string(euler_order_name(t.order))},
                {"phase", t.phase.to_string()},
                {"alpha", t.alpha.to_string()},
                {"beta", t.beta.to_string()},
                {"gamma", t.gamma.to_string()},
                {"text", t.to_string()}};
}

Json complex_json(Complex c) {
    return Json::array({c.real(), c.imag()});
}

Matrix read_matrix(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw PlanError("Cannot read matrix file " + path + ".");
    }
    Json doc;
    try {
        f >> doc;
    } catch (const Json::parse_error &e) {
        throw PlanError(std::string("Matrix file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.size() != 2) {
        throw PlanError("Matrix file must hold a 2x2 array of numbers or [re, im] pairs.");
    }
    Matrix m(2, 2);
    for (size_t i = 0; i < 2; i++) {
        if (!doc[i].is_array() || doc[i].size() != 2) {
            throw PlanError("Matrix file must hold a 2x2 array.");
        }
        for (size_t j = 0; j < 2; j++) {
            const Json &e = doc[i][j];
            auto r = static_cast<Eigen::Index>(i);
            auto c = static_cast<Eigen::Index>(j);
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw PlanError("Matrix entries must be numbers or [re, im].");
            }
        }
    }
    return m;
}

int cmd_run(const std::string &plan_path,
            const Common &common,
            size_t test_every,
            const std::vector<std::string> &adversaries,
            const std::string &transcript_path,
            bool include_secrets,
            std::ostream &out) {
    PlanFile file = load_plan_file(plan_path);
    SessionConfig config;
    config.seed = resolve_seed(common.seed, file.seed);
    config.test_every = test_every;
    config.adversaries = parse_adversaries(adversaries);
    StateVector input = file.input_state();

    ComputationPlan plan = file.compile();
    RunResult r = run_computation(plan, input, config);
    if (!transcript_path.empty()) {
        write_file(transcript_path, r.transcript.to_jsonl(include_secrets));
    }
    Json report = stamp(Json{{"command", "run"},
                             {"plan", plan_to_json(file)},
                             {"seed", config.seed},
                             {"test_every", test_every},
                             {"adversaries", adversaries}});
    report["seed"] = config.seed;
    report["status"] = static_cast<int>(r.status);
    if (!r.error.empty()) {
        report["error"] = r.error;
    }
    report["mode"] = std::string(angle_mode_name(plan.mode));
    report["plan_steps"] = plan.steps.size();
    report["delegations"] = r.delegations;
    report["messages"] = r.transcript.messages().size();
    report["tests"] = r.tests.size();
    report["transcript_hash"] = config_hash(Json(r.transcript.to_jsonl(include_secrets)));
    if (r.output) {
        Vector want = circuit_matrix(file.gates, file.num_wires) * input.amplitudes();
        report["fidelity"] = std::norm(want.dot(r.output->amplitudes()));
        report["output"] = state_json(*r.output);
    }
    emit(report, common.output, out);
    return static_cast<int>(r.status);
}

int cmd_decompose(const std::string &gate_name,
                  const std::string &matrix_path,
                  const std::vector<std::string> &orders,
                  bool table,
                  bool abc,
                  const Common &common,
                  std::ostream &out,
                  std::ostream &err) {
    Matrix u;
    std::string label;
    if (!matrix_path.empty()) {
        u = read_matrix(matrix_path);
        label = matrix_path;
    } else if (gate_name == "I") {
        u = pauli::I();
        label = "I";
    } else if (!gate_name.empty()) {
        try {
            u = named_gate_matrix(parse_named_gate(gate_name));
        } catch (const std::invalid_argument &e) {
            throw PlanError(e.what());
        }
        label = gate_name;
    } else {
        throw PlanError("decompose needs a gate name or --matrix.");
    }
    double residual = unitarity_residual(u);
    if (!(residual <= tol::kStructural)) {
        err << "error: matrix is not unitary: max|U^dagger U - I| = " << residual << "\n";
        return static_cast<int>(ExitCode::kPlanError);
    }
    std::vector<EulerOrder> selected;
    for (const std::string &o : orders) {
        try {
            selected.push_back(parse_euler_order(o));
        } catch (const std::invalid_argument &e) {
            throw PlanError(e.what());
        }
    }
    if (selected.empty()) {
        selected.assign(kAllEulerOrders.begin(), kAllEulerOrders.end());
    }
    Json report = stamp(Json{{"command", "decompose"}, {"input", label}, {"orders", orders}, {"table", table},
                             {"abc", abc}});
    Json rows = Json::array();
    for (EulerOrder o : selected) {
        EulerTriple t = euler_decompose(u, o);
        Json row = triple_json(t);
        row["residual"] = (t.matrix() - u).cwiseAbs().maxCoeff();
        rows.push_back(std::move(row));
    }
    report["euler"] = std::move(rows);
    if (table && matrix_path.empty() && gate_name != "I") {
        Json entries = Json::array();
        for (EulerOrder o : {EulerOrder::kZYZ, EulerOrder::kYXY, EulerOrder::kZXZ}) {
            TableEntry e = named_gate_table(parse_named_gate(gate_name), o);
            Json row = triple_json(e.triple);
            row["residual_phase"] = complex_json(e.residual_phase);
            row["deviation"] = e.deviation;
            row["matches_up_to_phase"] = e.matches_up_to_phase();
            row["phase_exact"] = e.phase_exact();
            entries.push_back(std::move(row));
        }
        report["table"] = std::move(entries);
    }
    if (abc) {
        ABCDecomposition d = abc_decompose(u);
        report["abc"] = Json{{"alpha", d.alpha.to_string()},
                             {"beta", d.beta.to_string()},
                             {"gamma", d.gamma.to_string()},
                             {"delta", d.delta.to_string()},
                             {"abc_identity_residual", (d.a() * d.b() * d.c() - pauli::I()).cwiseAbs().maxCoeff()},
                             {"reconstruction_residual", (d.reconstruct() - u).cwiseAbs().maxCoeff()}};
    }
    emit(report, common.output, out);
    return 0;
}

int cmd_test_servers(const std::vector<std::string> &adversaries,
                     size_t trials,
                     const std::string &kind,
                     const Common &common,
                     std::ostream &out) {
    std::vector<AdversaryModel> models = parse_adversaries(adversaries);
    uint64_t seed = resolve_seed(common.seed, std::nullopt);
    Server b1 = server_for(PartyRole::kServer1, models);
    Server b2 = server_for(PartyRole::kServer2, models);
    std::vector<TestKind> kinds;
    if (kind == "rotation" || kind == "both") {
        kinds.push_back(TestKind::kRotation);
    }
    if (kind == "controlled" || kind == "both") {
        kinds.push_back(TestKind::kControlled);
    }
    Json report = stamp(Json{{"command", "test-servers"},
                             {"adversaries", adversaries},
                             {"trials", trials},
                             {"kind", kind},
                             {"seed", seed}});
    report["seed"] = seed;
    report["trials"] = trials;
    Json verdicts = Json::array();
    Rng root(seed);
    bool all_ok = true;
    for (TestKind k : kinds) {
        Rng rng = root.split();
        size_t detections = 0;
        double expected = 0;
        double variance = 0;
        Json events = Json::array();
        for (size_t i = 0; i < trials; i++) {
            TestSetup s = random_test_setup(k, rng);
            double p = test_oracle(s, b1, b2).detection_probability;
            expected += p;
            variance += p * (1 - p);
            bool detected;
            std::vector<std::string> reported;
            try {
                TestVerdict v = run_test(s, b1, b2, rng);
                detected = !v.passed;
                reported = v.reported;
            } catch (const ProtocolError &) {
                detected = true;
            }
            if (detected) {
                detections++;
                if (events.size() < 20) {
                    events.push_back(Json{{"trial", i}, {"theta", s.theta.to_string()}, {"reported", reported}});
                }
            }
        }
        DetectionStats st{trials, detections, expected, variance};
        all_ok = all_ok && st.within_3_sigma();
        verdicts.push_back(Json{{"kind", std::string(test_kind_name(k))},
                                {"trials", trials},
                                {"detections", detections},
                                {"pass_rate", trials ? 1.0 - st.observed_rate() : 1.0},
                                {"observed_detection_rate", st.observed_rate()},
                                {"predicted_detection_rate", st.predicted_rate()},
                                {"sigma", std::sqrt(variance)},
                                {"within_3_sigma", st.within_3_sigma()},
                                {"detection_events", std::move(events)}});
    }
    report["verdicts"] = std::move(verdicts);
    report["consistent_with_oracle"] = all_ok;
    emit(report, common.output, out);
    return 0;
}

int cmd_audit(const std::string &plan_path, size_t inputs, size_t r1_bits, const Common &common, std::ostream &out,
              std::ostream &err) {
    PlanFile file = load_plan_file(plan_path);
    uint64_t seed = resolve_seed(common.seed, file.seed);
    ComputationPlan plan = file.compile();
    if (plan.num_wires > 3) {
        throw PlanError("Input audit enumerates 4^wires pads; use at most 3 wires.");
    }
    Json report = stamp(Json{{"command", "audit"},
                             {"plan", plan_to_json(file)},
                             {"inputs", inputs},
                             {"r1_bits", r1_bits},
                             {"seed", seed}});
    report["seed"] = seed;
    report["trials"] = inputs;

    Rng rng(seed);
    double max_distance = 0;
    Json per_input = Json::array();
    for (size_t i = 0; i < inputs; i++) {
        StateVector in = file.input_state();
        if (i > 0) {
            Vector v(static_cast<Eigen::Index>(in.dim()));
            for (Eigen::Index k = 0; k < v.size(); k++) {
                v[k] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
            }
            in = StateVector::from_amplitudes(v / v.norm());
        }
        InputAuditReport a = blindness_audit_inputs(plan, in, std::nullopt, r1_bits, seed + i);
        max_distance = std::max(max_distance, a.max_distance);
        per_input.push_back(Json{{"input", i}, {"max_distance", a.max_distance}, {"delegations", a.steps.size()}});
    }
    report["distances"] = Json{{"max_trace_distance", max_distance}, {"per_input", std::move(per_input)},
                               {"within_1e-10", max_distance <= 1e-10}};

    int code = 0;
    try {
        AngleAuditReport a = blindness_audit_angles(plan);
        Json rows = Json::array();
        for (const AngleAuditRow &r : a.rows) {
            rows.push_back(Json{{"step", r.step},
                                {"delegation", r.delegation},
                                {"condition", r.condition},
                                {"keys", r.key_space},
                                {"counts", r.counts},
                                {"uniform", r.uniform}});
        }
        Json marg = Json::object();
        for (const auto &[theta, counts] : a.theta_marginals) {
            marg[theta] = counts;
        }
        report["distributions"] = Json{{"theta_marginals", std::move(marg)},
                                       {"max_tv_distance", a.max_tv},
                                       {"all_uniform", a.all_uniform},
                                       {"rows", std::move(rows)}};
    } catch (const PlanError &e) {
        report["distributions"] = Json{{"refused", e.what()}};
        err << "angle audit refused: " << e.what() << "\n";
        code = static_cast<int>(ExitCode::kPlanError);
    }
    emit(report, common.output, out);
    return code;
}

int cmd_qft(size_t n,
            const std::string &input_spec,
            bool direct,
            const std::string &transcript_path,
            bool include_secrets,
            const Common &common,
            std::ostream &out) {
    if (n < 1 || n > kMaxQftQubits) {
        throw PlanError("--n must be in 1.." + std::to_string(kMaxQftQubits) + ".");
    }
    StateVector input = StateVector::basis(n, 0);
    if (!input_spec.empty()) {
        bool numeric = input_spec.find_first_not_of("0123456789") == std::string::npos;
        if (numeric) {
            input = parse_input_state(Json(std::stoull(input_spec)), n);
        } else {
            std::ifstream f(input_spec);
            if (!f) {
                throw PlanError("Cannot read input file " + input_spec + ".");
            }
            Json doc;
            try {
                f >> doc;
            } catch (const Json::parse_error &e) {
                throw PlanError(std::string("Input file is not valid JSON: ") + e.what());
            }
            input = parse_input_state(doc, n);
        }
    }
    uint64_t seed = resolve_seed(common.seed, std::nullopt);
    Json report = stamp(Json{{"command", "qft"}, {"n", n}, {"input", input_spec}, {"direct", direct}, {"seed", seed}});
    report["seed"] = seed;
    report["n"] = n;
    Vector want = dft_matrix(n) * input.amplitudes();
    if (direct) {
        QftCircuit c = qft_circuit(n);
        Vector got = circuit_matrix(c.gates, n) * input.amplitudes();
        report["mode"] = "direct";
        report["fidelity"] = std::norm(want.dot(got));
        report["output"] = state_json(StateVector::unnormalized(got));
        emit(report, common.output, out);
        return 0;
    }
    SessionConfig config;
    config.seed = seed;
    BlindQftResult r = run_blind_qft(n, input, config);
    if (!transcript_path.empty()) {
        write_file(transcript_path, r.run.transcript.to_jsonl(include_secrets));
    }
    report["mode"] = std::string(angle_mode_name(r.plan.mode));
    report["status"] = static_cast<int>(r.run.status);
    report["plan_steps"] = r.plan.steps.size();
    report["delegations"] = r.run.delegations;
    if (r.run.output) {
        report["fidelity"] = r.fidelity;
        report["output"] = state_json(*r.run.output);
    } else {
        report["error"] = r.run.error;
    }
    emit(report, common.output, out);
    return static_cast<int>(r.run.status);
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Blind quantum computation simulator: gate teleportation, Pauli frames, honesty tests, audits."};
    app.set_version_flag("--version", std::string(GTUBQC_VERSION));
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", common.seed, "RNG seed (GTUBQC_SEED overrides)");
        sub->add_option("-o,--output", common.output, "Report path (default stdout)");
    };

    std::string plan_path;
    size_t test_every = 4;
    std::vector<std::string> adversaries;
    std::string transcript_path;
    bool include_secrets = false;
    CLI::App *run_cmd = app.add_subcommand("run", "Run a plan through the blind protocol");
    run_cmd->add_option("plan", plan_path, "Plan JSON file")->required();
    run_cmd->add_option("--test-every", test_every, "Plan steps between test sessions (0 disables)");
    run_cmd->add_option("--adversary", adversaries, "Server behaviour, e.g. flip:bob1:1");
    run_cmd->add_option("--transcript", transcript_path, "Write the JSON-lines transcript here");
    run_cmd->add_flag("--include-secrets", include_secrets, "Include client-only records in the transcript");
    add_common(run_cmd);

    std::string gate_name;
    std::string matrix_path;
    std::vector<std::string> orders;
    bool table = false;
    bool abc = false;
    CLI::App *dec = app.add_subcommand("decompose", "Euler and ABC decompositions of a 2x2 unitary");
    dec->add_option("gate", gate_name, "Named gate: I H S T X Y Z");
    dec->add_option("--matrix", matrix_path, "JSON file with a 2x2 matrix");
    dec->add_option("--order", orders, "Euler order(s); default all six");
    dec->add_flag("--table", table, "Also print the tabulated zyz/yxy/zxz entries");
    dec->add_flag("--abc", abc, "Also print the ABC decomposition");
    add_common(dec);

    size_t trials = 1000;
    std::string kind = "both";
    CLI::App *ts = app.add_subcommand("test-servers", "Run honesty test sessions against server models");
    ts->add_option("--adversary", adversaries, "Server behaviour (repeatable)");
    ts->add_option("--trials", trials, "Test sessions per kind");
    ts->add_option("--kind", kind, "rotation, controlled or both")
        ->check(CLI::IsMember({"rotation", "controlled", "both"}));
    add_common(ts);

    size_t inputs = 5;
    size_t r1_bits = 3;
    CLI::App *aud = app.add_subcommand("audit", "Blindness audits by exact enumeration");
    aud->add_option("plan", plan_path, "Plan JSON file")->required();
    aud->add_option("--inputs", inputs, "Inputs to audit (the plan's input plus random ones)");
    aud->add_option("--r1-bits", r1_bits, "Encrypted rotations whose r1 key is enumerated");
    add_common(aud);

    size_t n = 2;
    std::string input_spec;
    bool direct = false;
    CLI::App *qft = app.add_subcommand("qft", "Quantum Fourier transform, blind or direct");
    qft->add_option("--n", n, "Qubits");
    qft->add_option("--input", input_spec, "Basis index or JSON amplitude file");
    auto *blind_flag = qft->add_flag("--blind", "Run through the blind protocol (default)");
    qft->add_flag("--direct", direct, "Simulate the circuit directly")->excludes(blind_flag);
    qft->add_option("--transcript", transcript_path, "Write the JSON-lines transcript here");
    qft->add_flag("--include-secrets", include_secrets, "Include client-only records in the transcript");
    add_common(qft);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::kPlanError);
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(plan_path, common, test_every, adversaries, transcript_path, include_secrets, out);
        }
        if (dec->parsed()) {
            return cmd_decompose(gate_name, matrix_path, orders, table, abc, common, out, err);
        }
        if (ts->parsed()) {
            return cmd_test_servers(adversaries, trials, kind, common, out);
        }
        if (aud->parsed()) {
            return cmd_audit(plan_path, inputs, r1_bits, common, out, err);
        }
        return cmd_qft(n, input_spec, direct, transcript_path, include_secrets, common, out);
    } catch (const PlanError &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::kPlanError);
    } catch (const ProtocolError &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    }
}

}  // namespace gtubqc::cli
