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

// Plan documents:
//   {"wires": 2, "mode": "grid", "order": "zyz", "seed": 7, "input": 0,
//    "gates": [{"name": "H", "wires": [0]}, {"name": "RZ", "wires": [1], "params": ["pi/4"]},
//              {"name": "CPHASE", "wires": [0, 1], "params": [2]}]}
// "input" is a basis index or a list of [re, im] amplitudes. Angles are strings
// ("3pi/4", "0.25") or numbers (radians).

#include <optional>
#include <string>
#include <vector>

#include "gtubqc/plan.h"
#include "gtubqc/qcore.h"
#include "gtubqc/transcript.h"

namespace gtubqc {

struct PlanFile {
    size_t num_wires = 0;
    std::vector<Gate> gates;
    std::optional<uint64_t> seed;
    AngleMode mode = AngleMode::kGrid;
    EulerOrder order = EulerOrder::kZYZ;
    /// Basis |0...0> when absent.
    std::optional<StateVector> input;

    StateVector input_state() const;
    ComputationPlan compile() const;
};

/// Throws PlanError on any schema or value problem.
PlanFile parse_plan(const Json &doc);
PlanFile parse_plan_text(const std::string &text);
PlanFile load_plan_file(const std::string &path);
Json plan_to_json(const PlanFile &plan);

/// Basis index or [[re, im], ...] amplitudes. Throws PlanError.
StateVector parse_input_state(const Json &value, size_t num_wires);

}  // namespace gtubqc
