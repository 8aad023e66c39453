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

#include "gtubqc/transcript.h"

#include <set>
#include <sstream>

using namespace gtubqc;

void Transcript::set_header(Json header) {
    header_ = std::move(header);
}

std::string Transcript::new_qubit() {
    return "q" + std::to_string(next_qubit_++);
}

uint64_t Transcript::add_message(Json body, PartyRole from, PartyRole to) {
    Json rec;
    rec["seq"] = next_seq_;
    rec["type"] = body["type"];
    rec["from"] = role_name(from);
    rec["to"] = role_name(to);
    for (auto it = body.begin(); it != body.end(); ++it) {
        if (it.key() != "type") {
            rec[it.key()] = it.value();
        }
    }
    records_.push_back({std::move(rec), false});
    return next_seq_++;
}

uint64_t Transcript::qubit_transfer(PartyRole from, PartyRole to, std::vector<std::string> qubits) {
    return add_message({{"type", "qubit_transfer"}, {"qubits", std::move(qubits)}}, from, to);
}

uint64_t Transcript::angle_instruction(
    PartyRole from, PartyRole to, const Angle &angle, std::vector<std::string> qubits, Axis axis, bool controlled) {
    return add_message({{"type", "angle_instruction"},
                        {"angle", angle.to_string()},
                        {"axis", axis_name(axis)},
                        {"qubits", std::move(qubits)},
                        {"controlled", controlled}},
                       from,
                       to);
}

uint64_t Transcript::outcome_report(PartyRole from, PartyRole to, std::vector<std::string> outcomes) {
    return add_message({{"type", "outcome_report"}, {"outcomes", std::move(outcomes)}}, from, to);
}

void Transcript::add_secret(Json body) {
    records_.push_back({std::move(body), true});
}

std::vector<Json> Transcript::messages() const {
    std::vector<Json> out;
    for (const TranscriptRecord &r : records_) {
        if (!r.secret) {
            out.push_back(r.body);
        }
    }
    return out;
}

std::vector<Json> Transcript::server_view(PartyRole server) const {
    std::string name(role_name(server));
    std::vector<Json> out;
    for (const TranscriptRecord &r : records_) {
        if (!r.secret && (r.body["from"] == name || r.body["to"] == name)) {
            out.push_back(r.body);
        }
    }
    return out;
}

std::vector<Json> Transcript::secrets() const {
    std::vector<Json> out;
    for (const TranscriptRecord &r : records_) {
        if (r.secret) {
            out.push_back(r.body);
        }
    }
    return out;
}

std::string Transcript::to_jsonl(bool include_secrets) const {
    std::string out = header_.dump() + "\n";
    for (const TranscriptRecord &r : records_) {
        if (r.secret && !include_secrets) {
            continue;
        }
        out += r.body.dump();
        out += "\n";
    }
    return out;
}

const std::vector<std::string> &gtubqc::secret_keys() {
    static const std::vector<std::string> keys{"r1",   "r2",         "xi",   "theta",        "k",       "ancilla_code",
                                               "byproduct", "frame", "gate", "purpose", "pad",     "plan",
                                               "gates", "global_phase"};
    return keys;
}

std::vector<std::string> gtubqc::check_unidirectional(const std::vector<Json> &messages) {
    std::vector<std::string> out;
    for (const Json &m : messages) {
        if (!m.contains("from") || !m.contains("to")) {
            continue;
        }
        PartyRole from = parse_role(m["from"].get<std::string>());
        PartyRole to = parse_role(m["to"].get<std::string>());
        std::string seq = m.contains("seq") ? m["seq"].dump() : "?";
        std::string type = m.value("type", "");
        if (is_server(from) && is_server(to)) {
            out.push_back("message " + seq + ": server-to-server " + type);
        }
        if (type == "qubit_transfer" && is_server(from)) {
            out.push_back("message " + seq + ": qubits sent by a server");
        }
        if (type == "outcome_report" && !(is_server(from) && to == PartyRole::kClient)) {
            out.push_back("message " + seq + ": outcome report not server-to-client");
        }
        if (type == "angle_instruction" && !(from == PartyRole::kClient && is_server(to))) {
            out.push_back("message " + seq + ": angle instruction not client-to-server");
        }
    }
    return out;
}

namespace {

void scan(const Json &j, const std::set<std::string> &keys, std::set<std::string> &found) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (keys.count(it.key())) {
                found.insert(it.key());
            }
            scan(it.value(), keys, found);
        }
    } else if (j.is_array()) {
        for (const Json &e : j) {
            scan(e, keys, found);
        }
    }
}

}  // namespace

std::vector<std::string> gtubqc::find_secret_keys(const std::vector<Json> &records) {
    std::set<std::string> keys(secret_keys().begin(), secret_keys().end());
    std::set<std::string> found;
    for (const Json &r : records) {
        scan(r, keys, found);
    }
    return {found.begin(), found.end()};
}

std::vector<Json> gtubqc::parse_jsonl(const std::string &text) {
    std::vector<Json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(Json::parse(line));
        }
    }
    return out;
}
