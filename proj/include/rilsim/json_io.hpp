#pragma once

#include <json.hpp>

#include "rilsim/court.hpp"
#include "rilsim/lp.hpp"
#include "rilsim/priority.hpp"

namespace rilsim {

// All emitted JSON goes through ordered_json with explicit key order so that
// identical inputs reproduce identical bytes.
using Json = nlohmann::ordered_json;

Json condition_to_json(const Condition& c);
Condition condition_from_json(const Json& j, const std::string& where);

Json evidence_to_json(const EvidenceProfile& e);
EvidenceProfile evidence_from_json(const Json& j, const std::string& where);

Json lp_to_json(const LegalProposition& lp);
LegalProposition lp_from_json(const Json& j, const std::string& where);

Json event_to_json(const CourtEvent& ev);
CourtEvent event_from_json(const Json& j, const std::string& where);

Json policy_to_json(const PriorityPolicy& p);
PriorityPolicy policy_from_json(const Json& j, const std::string& where);

}  // namespace rilsim
