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

#include <stdexcept>
#include <string>
#include <string_view>

#include "gtubqc/angle.h"
#include "gtubqc/qcore.h"

namespace gtubqc {

enum class PartyRole { kTrustedCenter, kClient, kServer1, kServer2 };

/// "trusted_center", "client", "bob1", "bob2".
std::string_view role_name(PartyRole role);
/// Accepts role_name output plus "server1"/"server2".
PartyRole parse_role(std::string_view text);
bool is_server(PartyRole role);
PartyRole other_server(PartyRole server);

enum class ExitCode : int { kOk = 0, kPlanError = 2, kAbort = 3, kMalformedResponse = 4 };

class ProtocolError : public std::runtime_error {
   public:
    ProtocolError(ExitCode code, const std::string &message) : std::runtime_error(message), code_(code) {
    }
    ExitCode code() const {
        return code_;
    }

   private:
    ExitCode code_;
};

enum class AdversaryKind { kHonest, kFlipOutcomeBit, kFixedOutcome, kSkipRotation, kAngleOffset, kMalformed };

/// How a server deviates. Spec strings: "honest", "flip:bob1:1" (bit 1 = b1, 2 = b2),
/// "fixed:bob1:00", "skip:bob2", "offset:bob1:pi/2", "malformed:bob2".
struct AdversaryModel {
    AdversaryKind kind = AdversaryKind::kHonest;
    PartyRole target = PartyRole::kServer1;
    int bit = 1;
    BellCode fixed;
    Angle offset;

    static AdversaryModel honest(PartyRole target = PartyRole::kServer1);
    /// Throws std::invalid_argument on a malformed spec.
    static AdversaryModel parse(std::string_view spec);
    std::string to_string() const;
};

/// A server's (possibly dishonest) behaviour. Honest servers apply the instructed angle and
/// report the true Bell outcome.
class Server {
   public:
    explicit Server(PartyRole role, AdversaryModel adversary = {});

    PartyRole role() const {
        return role_;
    }
    const AdversaryModel &adversary() const {
        return adversary_;
    }
    /// Angle actually applied for an instructed angle.
    Angle applied_angle(const Angle &instructed) const;
    /// Reported text for a true outcome.
    std::string report(BellCode actual) const;
    /// Reported code (malformed servers have none).
    std::optional<BellCode> reported_code(BellCode actual) const;

   private:
    PartyRole role_;
    AdversaryModel adversary_;
};

/// Client-side parsing of a reported outcome; throws ProtocolError(kMalformedResponse).
BellCode parse_reported_outcome(std::string_view text, PartyRole from);

}  // namespace gtubqc
