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

#include "gtubqc/plan_file.h"

#include <fstream>
#include <sstream>

using namespace gtubqc;

namespace {

Angle parse_angle_value(const Json &v) {
    if (v.is_string()) {
        try {
            return Angle::parse(v.get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw PlanError(e.what());
        }
    }
    if (v.is_number()) {
        return Angle::from_radians(v.get<double>());
    }
    throw PlanError("Angle parameter must be a string or a number.");
}

Gate parse_gate(const Json &g, size_t index) {
    std::string where = "gate " + std::to_string(index);
    if (!g.is_object() || !g.contains("name") || !g["name"].is_string()) {
        throw PlanError(where + ": needs a string 'name'.");
    }
    if (!g.contains("wires") || !g["wires"].is_array()) {
        throw PlanError(where + ": needs a 'wires' array.");
    }
    Gate gate;
    gate.name = g["name"].get<std::string>();
    for (const Json &w : g["wires"]) {
        if (!w.is_number_unsigned()) {
            throw PlanError(where + ": wires must be non-negative integers.");
        }
        gate.wires.push_back(w.get<size_t>());
    }
    if (g.contains("params")) {
        const Json &p = g["params"];
        if (!p.is_array() || p.size() != 1) {
            throw PlanError(where + ": 'params' must hold exactly one value.");
        }
        if (gate.name == "CPHASE") {
            if (!p[0].is_number_integer()) {
                throw PlanError(where + ": CPHASE takes an integer k.");
            }
            gate.k = p[0].get<int>();
        } else {
            gate.angle = parse_angle_value(p[0]);
        }
    }
    return gate;
}

}  // namespace

StateVector gtubqc::parse_input_state(const Json &value, size_t num_wires) {
    if (value.is_number_unsigned()) {
        uint64_t index = value.get<uint64_t>();
        if (num_wires >= 63 || index >= (uint64_t{1} << num_wires)) {
            throw PlanError("Input basis index out of range.");
        }
        return StateVector::basis(num_wires, index);
    }
    if (!value.is_array() || value.size() != (size_t{1} << num_wires)) {
        throw PlanError("Input must be a basis index or 2^wires amplitudes.");
    }
    Vector v(static_cast<Eigen::Index>(value.size()));
    for (size_t i = 0; i < value.size(); i++) {
        const Json &a = value[i];
        if (a.is_number()) {
            v[static_cast<Eigen::Index>(i)] = a.get<double>();
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            v[static_cast<Eigen::Index>(i)] = Complex(a[0].get<double>(), a[1].get<double>());
        } else {
            throw PlanError("Amplitude " + std::to_string(i) + " must be a number or [re, im].");
        }
    }
    try {
        return StateVector::from_amplitudes(v, 1e-9).normalized();
    } catch (const std::invalid_argument &e) {
        throw PlanError(e.what());
    }
}

PlanFile gtubqc::parse_plan(const Json &doc) {
    if (!doc.is_object()) {
        throw PlanError("Plan must be a JSON object.");
    }
    PlanFile p;
    if (!doc.contains("wires") || !doc["wires"].is_number_unsigned()) {
        throw PlanError("Plan needs a non-negative integer 'wires'.");
    }
    p.num_wires = doc["wires"].get<size_t>();
    if (p.num_wires == 0 || p.num_wires > 12) {
        throw PlanError("Plan 'wires' must be in 1..12.");
    }
    if (!doc.contains("gates") || !doc["gates"].is_array()) {
        throw PlanError("Plan needs a 'gates' array.");
    }
    for (size_t i = 0; i < doc["gates"].size(); i++) {
        p.gates.push_back(parse_gate(doc["gates"][i], i));
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            throw PlanError("'seed' must be a non-negative integer.");
        }
        p.seed = doc["seed"].get<uint64_t>();
    }
    if (doc.contains("mode")) {
        p.mode = parse_angle_mode(doc["mode"].get<std::string>());
    }
    if (doc.contains("order")) {
        try {
            p.order = parse_euler_order(doc["order"].get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw PlanError(e.what());
        }
    }
    if (doc.contains("input")) {
        p.input = parse_input_state(doc["input"], p.num_wires);
    }
    return p;
}

PlanFile gtubqc::parse_plan_text(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw PlanError(std::string("Plan is not valid JSON: ") + e.what());
    }
    return parse_plan(doc);
}

PlanFile gtubqc::load_plan_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw PlanError("Cannot read plan file " + path + ".");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_plan_text(ss.str());
}

StateVector PlanFile::input_state() const {
    return input ? *input : StateVector::basis(num_wires, 0);
}

ComputationPlan PlanFile::compile() const {
    return compile_gates(gates, num_wires, CompileOptions{mode, order});
}

Json gtubqc::plan_to_json(const PlanFile &plan) {
    Json gates = Json::array();
    for (const Gate &g : plan.gates) {
        Json j{{"name", g.name}, {"wires", g.wires}};
        if (g.k) {
            j["params"] = Json::array({*g.k});
        } else if (g.angle) {
            j["params"] = Json::array({g.angle->to_string()});
        }
        gates.push_back(std::move(j));
    }
    Json doc{{"wires", plan.num_wires},
             {"mode", std::string(angle_mode_name(plan.mode))},
             {"order", std::string(euler_order_name(plan.order))},
             {"gates", std::move(gates)}};
    if (plan.seed) {
        doc["seed"] = *plan.seed;
    }
    if (plan.input) {
        Json amps = Json::array();
        for (size_t i = 0; i < plan.input->dim(); i++) {
            Complex a = (*plan.input)[i];
            amps.push_back(Json::array({a.real(), a.imag()}));
        }
        doc["input"] = std::move(amps);
    }
    return doc;
}
