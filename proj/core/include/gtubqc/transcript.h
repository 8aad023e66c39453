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

// Session transcript: public messages between parties plus client-only secret records.
// Serialized as JSON lines with a fixed key order, so equal sessions give equal bytes.

#include <string>
#include <vector>

#include "gtubqc/angle.h"
#include "gtubqc/parties.h"
#include "gtubqc/rotations.h"
#include "json.hpp"

namespace gtubqc {

using Json = nlohmann::ordered_json;

struct TranscriptRecord {
    Json body;
    /// Client-only (keys, frames, plan data); omitted unless secrets are requested.
    bool secret;
};

class Transcript {
   public:
    void set_header(Json header);
    const Json &header() const {
        return header_;
    }

    /// Fresh opaque qubit label ("q0", "q1", ...).
    std::string new_qubit();

    uint64_t qubit_transfer(PartyRole from, PartyRole to, std::vector<std::string> qubits);
    uint64_t angle_instruction(
        PartyRole from, PartyRole to, const Angle &angle, std::vector<std::string> qubits, Axis axis, bool controlled);
    uint64_t outcome_report(PartyRole from, PartyRole to, std::vector<std::string> outcomes);
    void add_secret(Json body);

    const std::vector<TranscriptRecord> &records() const {
        return records_;
    }
    /// Public message bodies in order.
    std::vector<Json> messages() const;
    /// Messages a server sent or received.
    std::vector<Json> server_view(PartyRole server) const;
    std::vector<Json> secrets() const;

    std::string to_jsonl(bool include_secrets) const;

   private:
    uint64_t add_message(Json body, PartyRole from, PartyRole to);

    Json header_;
    std::vector<TranscriptRecord> records_;
    uint64_t next_seq_ = 0;
    uint64_t next_qubit_ = 0;
};

/// Keys that must never reach a server.
const std::vector<std::string> &secret_keys();

/// Descriptions of violations: server-to-server messages, qubits leaving a server,
/// outcomes not flowing server-to-client.
std::vector<std::string> check_unidirectional(const std::vector<Json> &messages);

/// Secret keys found anywhere in the given records (recursively).
std::vector<std::string> find_secret_keys(const std::vector<Json> &records);

/// Parses a JSON-lines transcript; the first line is the header.
std::vector<Json> parse_jsonl(const std::string &text);

}  // namespace gtubqc
