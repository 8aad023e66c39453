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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtubqc/parties.h"
#include "gtubqc/pauli_frame.h"
#include "gtubqc/plan.h"
#include "gtubqc/qcore.h"
#include "gtubqc/rng.h"
#include "gtubqc/teleport.h"
#include "gtubqc/transcript.h"

namespace gtubqc {

struct SessionConfig {
    uint64_t seed = 0;
    /// One test session after every `test_every` plan steps; 0 disables tests.
    size_t test_every = 4;
    std::vector<AdversaryModel> adversaries;
};

/// Server assignment for one plan step.
struct RouteDecision {
    PartyRole executing;
    /// Idle server that receives a decoy pair (controlled steps only).
    std::optional<PartyRole> decoy;
};

/// Single-qubit delegations alternate between the servers; a controlled step goes to a
/// uniformly random server and its decoy to the other.
class RoutingPolicy {
   public:
    RouteDecision route_single();
    RouteDecision route_controlled(Rng &rng);

   private:
    PartyRole next_ = PartyRole::kServer1;
};

RouteDecision route_step(const PlanStep &step, RoutingPolicy &policy, Rng &rng);

/// What a server holds right after a qubit transfer (before it acts).
struct HeldState {
    size_t delegation;
    PartyRole server;
    bool decoy;
    /// Joint state of everything in play; `held` lists the server's wires within it.
    const StateVector *joint;
    std::vector<size_t> held;
};

/// Optional overrides used by audits: fixed keys, fixed outcomes, and state observation.
struct RunHooks {
    /// r1 for the n-th encrypted single-qubit rotation.
    std::function<std::optional<bool>(size_t)> r1;
    /// Input pad for a wire (otherwise drawn from the key stream).
    std::function<std::optional<PauliBits>(size_t)> pad;
    /// Bell outcome for the n-th Bell measurement of the computation.
    std::function<std::optional<BellCode>(size_t)> outcome;
    std::function<void(const HeldState &)> on_transfer;
    /// Stop after this many plan steps.
    std::optional<size_t> stop_after;
};

struct InterleavedTest {
    size_t after_step;
    std::string kind;
    bool passed;
};

struct RunResult {
    ExitCode status = ExitCode::kOk;
    std::string error;
    /// Recovered output, including the plan's global phase (equals target * input exactly).
    std::optional<StateVector> output;
    /// Register before recovery.
    std::optional<StateVector> raw;
    PauliFrame frame;
    Transcript transcript;
    std::vector<InterleavedTest> tests;
    size_t delegations = 0;
};

/// Checks wires, grid membership in grid mode, and the C-Rz-only rule. Throws PlanError.
void validate_plan(const ComputationPlan &plan);

/// Runs the four-party protocol on `input`. Never throws for protocol outcomes; failures
/// are reported through RunResult::status.
RunResult run_computation(const ComputationPlan &plan,
                          const StateVector &input,
                          const SessionConfig &config,
                          const RunHooks &hooks = {});

/// frame^dagger * state.
StateVector recover_output(const StateVector &state, const PauliFrame &frame);

/// FNV-1a of the canonical header, used to tag reports.
std::string config_hash(const Json &header);

}  // namespace gtubqc
