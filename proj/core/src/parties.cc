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

#include "gtubqc/parties.h"

#include <vector>

using namespace gtubqc;

std::string_view gtubqc::role_name(PartyRole role) {
    switch (role) {
        case PartyRole::kTrustedCenter:
            return "trusted_center";
        case PartyRole::kClient:
            return "client";
        case PartyRole::kServer1:
            return "bob1";
        case PartyRole::kServer2:
            return "bob2";
    }
    return "?";
}

PartyRole gtubqc::parse_role(std::string_view text) {
    if (text == "trusted_center") {
        return PartyRole::kTrustedCenter;
    }
    if (text == "client") {
        return PartyRole::kClient;
    }
    if (text == "bob1" || text == "server1") {
        return PartyRole::kServer1;
    }
    if (text == "bob2" || text == "server2") {
        return PartyRole::kServer2;
    }
    throw std::invalid_argument("Unknown party '" + std::string(text) + "'.");
}

bool gtubqc::is_server(PartyRole role) {
    return role == PartyRole::kServer1 || role == PartyRole::kServer2;
}

PartyRole gtubqc::other_server(PartyRole server) {
    if (!is_server(server)) {
        throw std::invalid_argument("other_server expects a server role.");
    }
    return server == PartyRole::kServer1 ? PartyRole::kServer2 : PartyRole::kServer1;
}

AdversaryModel AdversaryModel::honest(PartyRole target) {
    AdversaryModel m;
    m.target = target;
    m.offset = Angle::zero();
    return m;
}

namespace {

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t p = s.find(':', start);
        out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

PartyRole server_role(std::string_view text, std::string_view spec) {
    PartyRole r = parse_role(text);
    if (!is_server(r)) {
        throw std::invalid_argument("Adversary target must be bob1 or bob2 in '" + std::string(spec) + "'.");
    }
    return r;
}

}  // namespace

AdversaryModel AdversaryModel::parse(std::string_view spec) {
    std::vector<std::string_view> parts = split(spec);
    AdversaryModel m = honest();
    auto bad = [&]() {
        return std::invalid_argument("Malformed adversary spec '" + std::string(spec) + "'.");
    };
    std::string_view kind = parts[0];
    if (kind == "honest") {
        if (parts.size() > 2) {
            throw bad();
        }
        if (parts.size() == 2) {
            m.target = server_role(parts[1], spec);
        }
        return m;
    }
    if (parts.size() < 2) {
        throw bad();
    }
    m.target = server_role(parts[1], spec);
    if (kind == "flip" && parts.size() == 3) {
        m.kind = AdversaryKind::kFlipOutcomeBit;
        if (parts[2] == "1") {
            m.bit = 1;
        } else if (parts[2] == "2") {
            m.bit = 2;
        } else {
            throw bad();
        }
    } else if (kind == "fixed" && parts.size() == 3) {
        m.kind = AdversaryKind::kFixedOutcome;
        m.fixed = BellCode::parse(parts[2]);
    } else if (kind == "skip" && parts.size() == 2) {
        m.kind = AdversaryKind::kSkipRotation;
    } else if (kind == "offset" && parts.size() == 3) {
        m.kind = AdversaryKind::kAngleOffset;
        m.offset = Angle::parse(parts[2]);
    } else if (kind == "malformed" && parts.size() == 2) {
        m.kind = AdversaryKind::kMalformed;
    } else {
        throw bad();
    }
    return m;
}

std::string AdversaryModel::to_string() const {
    std::string who(role_name(target));
    switch (kind) {
        case AdversaryKind::kHonest:
            return "honest:" + who;
        case AdversaryKind::kFlipOutcomeBit:
            return "flip:" + who + ":" + std::to_string(bit);
        case AdversaryKind::kFixedOutcome:
            return "fixed:" + who + ":" + fixed.to_string();
        case AdversaryKind::kSkipRotation:
            return "skip:" + who;
        case AdversaryKind::kAngleOffset:
            return "offset:" + who + ":" + offset.to_string();
        case AdversaryKind::kMalformed:
            return "malformed:" + who;
    }
    return "?";
}

Server::Server(PartyRole role, AdversaryModel adversary) : role_(role), adversary_(std::move(adversary)) {
    if (!is_server(role)) {
        throw std::invalid_argument("Server role must be bob1 or bob2.");
    }
    if (adversary_.target != role_) {
        adversary_ = AdversaryModel::honest(role_);
    }
}

Angle Server::applied_angle(const Angle &instructed) const {
    switch (adversary_.kind) {
        case AdversaryKind::kSkipRotation:
            return Angle::zero();
        case AdversaryKind::kAngleOffset:
            return instructed + adversary_.offset;
        default:
            return instructed;
    }
}

std::optional<BellCode> Server::reported_code(BellCode actual) const {
    switch (adversary_.kind) {
        case AdversaryKind::kFlipOutcomeBit:
            return adversary_.bit == 1 ? actual ^ BellCode{1, 0} : actual ^ BellCode{0, 1};
        case AdversaryKind::kFixedOutcome:
            return adversary_.fixed;
        case AdversaryKind::kMalformed:
            return std::nullopt;
        default:
            return actual;
    }
}

std::string Server::report(BellCode actual) const {
    std::optional<BellCode> c = reported_code(actual);
    return c ? c->to_string() : "2x";
}

BellCode gtubqc::parse_reported_outcome(std::string_view text, PartyRole from) {
    try {
        return BellCode::parse(text);
    } catch (const std::invalid_argument &) {
        throw ProtocolError(ExitCode::kMalformedResponse, "Server " + std::string(role_name(from)) +
                                                               " returned malformed outcome '" + std::string(text) +
                                                               "'.");
    }
}
