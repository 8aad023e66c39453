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

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gtubqc/parties.h"
#include "gtubqc/plan.h"
#include "gtubqc/qcore.h"
#include "gtubqc/rng.h"
#include "gtubqc/rotations.h"
#include "gtubqc/session.h"
#include "gtubqc/transcript.h"

namespace gtubqc {

/// (op1 (x) op2) |code> = |code>: the same-angle or opposite-angle pairing per Bell state.
struct PairedRotation {
    RotationGate op1;
    RotationGate op2;
};
PairedRotation paired_rotation_invariance(BellCode code, Axis axis, const Angle &theta);

/// Joint Born distribution of sequential Bell measurements on the listed wire pairs (indices
/// refer to the input state). Entry sum_i outcome_i.index() * 4^(m-1-i).
std::vector<double> joint_bell_distribution(const StateVector &state,
                                            const std::vector<std::pair<size_t, size_t>> &pairs);

enum class TestKind { kRotation, kControlled };
std::string_view test_kind_name(TestKind kind);

/// Rotation test: pairs (q1,q2) and (q3,q4) with codes[0], codes[1]. Bob1 holds q1,q3, applies
/// op1 to q1 and Bell-measures (q1,q3); Bob2 holds q2,q4, applies op2 to q2 and measures (q2,q4).
///
/// Controlled test: pairs A=(q1,q4), B=(q2,q6), C=(q3,q3'), D=(q5,q5') with codes[0..3] and
/// codes[0] in {00, 01}. Bob1 applies C-R(theta) on (q1,q2) then measures (q1,q3), (q2,q5);
/// Bob2 applies C-R(op2 angle for code B) on (q4,q6) then measures (q4,q3'), (q6,q5').
struct TestSetup {
    TestKind kind;
    Axis axis;
    Angle theta;
    std::vector<BellCode> codes;
};

/// Random codes and a uniform grid angle; rotation tests draw a random axis, controlled tests use Z.
TestSetup random_test_setup(TestKind kind, Rng &rng);

struct TestOracle {
    /// Honest joint distribution of the true outcomes (Bob1's measurements first).
    std::vector<double> honest;
    /// Distribution of the reported outcomes under the servers' behaviour.
    std::vector<double> reported;
    /// Probability that the reported tuple has honest probability 0.
    double detection_probability;
};
TestOracle test_oracle(const TestSetup &setup, const Server &bob1, const Server &bob2);

struct TestVerdict {
    TestKind kind;
    bool passed;
    Axis axis;
    Angle theta;
    std::vector<BellCode> codes;
    std::vector<std::string> reported;
    double honest_probability;
    double detection_probability;
    size_t trials = 1;
};

/// Runs one test session. Malformed reports throw ProtocolError(kMalformedResponse).
TestVerdict run_test(const TestSetup &setup, const Server &bob1, const Server &bob2, Rng &rng, Transcript *log = nullptr);
TestVerdict rotation_test(
    const Server &bob1, const Server &bob2, Axis axis, const Angle &theta, Rng &rng, Transcript *log = nullptr);
TestVerdict controlled_test(
    const Server &bob1, const Server &bob2, Axis axis, const Angle &theta, Rng &rng, Transcript *log = nullptr);

struct DetectionStats {
    size_t trials = 0;
    size_t detections = 0;
    /// Sum of per-trial oracle detection probabilities.
    double expected = 0;
    double variance = 0;

    double observed_rate() const {
        return trials ? static_cast<double>(detections) / static_cast<double>(trials) : 0;
    }
    double predicted_rate() const {
        return trials ? expected / static_cast<double>(trials) : 0;
    }
    /// |detections - expected| <= 3 sigma (exact equality when the variance is 0).
    bool within_3_sigma() const;
};

/// Runs `trials` random test sessions of one kind and compares detections with the oracle.
DetectionStats detection_statistics(TestKind kind, const Server &bob1, const Server &bob2, size_t trials, Rng &rng);

struct InputAuditStep {
    size_t delegation;
    PartyRole server;
    bool decoy;
    double distance;
    size_t samples;
};

struct InputAuditReport {
    double max_distance = 0;
    std::vector<InputAuditStep> steps;
};

/// Averages each server's held state over all Pauli pads of the input, all r1 choices of the
/// first `r1_bits` encrypted rotations, and (for decoys) all four pair codes, with keys and
/// outcomes otherwise fixed by `seed`. Reports trace distances from the maximally mixed state.
InputAuditReport blindness_audit_inputs(const ComputationPlan &plan,
                                        const StateVector &input,
                                        std::optional<size_t> max_plan_steps = std::nullopt,
                                        size_t r1_bits = 3,
                                        uint64_t seed = 1);

struct AngleAuditRow {
    std::string step;
    std::string delegation;
    std::string condition;
    size_t key_space;
    std::array<int, 8> counts;
    bool uniform;
};

struct AngleAuditReport {
    std::vector<AngleAuditRow> rows;
    /// theta' marginal of an encrypted rotation for theta in {pi/4, pi/2, pi}.
    std::map<std::string, std::array<int, 8>> theta_marginals;
    /// Max total-variation distance between the theta_marginals.
    double max_tv;
    bool all_uniform;
};

/// Exhaustive key enumeration for every delegated angle of the plan. Throws PlanError in
/// continuous mode, where no uniformity claim is made.
AngleAuditReport blindness_audit_angles(const ComputationPlan &plan);

}  // namespace gtubqc
