#include "rilsim/json_io.hpp"

#include "rilsim/errors.hpp"

namespace rilsim {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Json condition_to_json(const Condition& c) {
  Json literals = Json::array();
  for (const Literal& l : c.literals()) {
    literals.push_back(Json{{"tag", l.tag},
                            {"polarity", l.positive ? "positive" : "negative"}});
  }
  return Json{{"literals", std::move(literals)}};
}

Condition condition_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "condition must be an object with 'literals'");
  const Json& lits = field(j, "literals", where);
  if (!lits.is_array()) fail(where, "'literals' must be an array");
  std::vector<Literal> out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const std::string at = where + "/literals/" + std::to_string(i);
    const Json& l = lits[i];
    Literal lit;
    lit.tag = get_string(l, "tag", at);
    const std::string pol = get_string(l, "polarity", at);
    if (pol == "positive") {
      lit.positive = true;
    } else if (pol == "negative") {
      lit.positive = false;
    } else {
      fail(at, "polarity must be 'positive' or 'negative'");
    }
    out.push_back(std::move(lit));
  }
  return Condition::from_literals(std::move(out));
}

Json evidence_to_json(const EvidenceProfile& e) {
  Json j;
  j["tier"] = to_string(e.tier);
  j["science_version"] = e.science_version;
  j["witness_chain_length"] = e.witness_chain_length;
  j["scholar_rank"] = e.scholar_rank;
  j["scholar_involved"] = e.scholar_involved;
  j["issuing_court"] = e.issuing_court ? Json(*e.issuing_court) : Json(nullptr);
  j["issue_time"] = e.issue_time;
  return j;
}

EvidenceProfile evidence_from_json(const Json& j, const std::string& where) {
  EvidenceProfile e;
  const std::string tier = get_string(j, "tier", where);
  auto t = tier_from_string(tier);
  if (!t) fail(where, "unknown tier '" + tier + "'");
  e.tier = *t;
  e.science_version = field(j, "science_version", where).get<std::uint32_t>();
  e.witness_chain_length = field(j, "witness_chain_length", where).get<std::uint32_t>();
  e.scholar_rank = field(j, "scholar_rank", where).get<int>();
  e.scholar_involved = field(j, "scholar_involved", where).get<bool>();
  if (auto it = j.find("issuing_court"); it != j.end() && !it->is_null())
    e.issuing_court = it->get<std::string>();
  e.issue_time = field(j, "issue_time", where).get<std::uint32_t>();
  return e;
}

Json lp_to_json(const LegalProposition& lp) {
  Json j;
  j["id"] = lp.id;
  j["modality"] = to_string(lp.modality);
  j["action"] = lp.action;
  j["condition"] = condition_to_json(lp.condition);
  j["evidence"] = evidence_to_json(lp.evidence);
  j["withdrawn_at"] = lp.withdrawn_at ? Json(*lp.withdrawn_at) : Json(nullptr);
  return j;
}

LegalProposition lp_from_json(const Json& j, const std::string& where) {
  LegalProposition lp;
  lp.id = get_string(j, "id", where);
  const std::string modality = get_string(j, "modality", where);
  auto m = modality_from_string(modality);
  if (!m) fail(where, "unknown modality '" + modality + "'");
  lp.modality = *m;
  lp.action = get_string(j, "action", where);
  lp.condition = condition_from_json(field(j, "condition", where), where + "/condition");
  lp.evidence = evidence_from_json(field(j, "evidence", where), where + "/evidence");
  if (auto it = j.find("withdrawn_at"); it != j.end() && !it->is_null())
    lp.withdrawn_at = it->get<std::uint32_t>();
  return lp;
}

Json event_to_json(const CourtEvent& ev) {
  Json j;
  j["round"] = ev.round;
  j["court_id"] = ev.court_id;
  j["seq"] = ev.seq;
  j["kind"] = to_string(ev.kind);
  j["lp_id"] = ev.lp_id;
  j["reason"] = to_string(ev.reason);
  j["payload"] = ev.payload ? lp_to_json(*ev.payload) : Json(nullptr);
  return j;
}

CourtEvent event_from_json(const Json& j, const std::string& where) {
  CourtEvent ev;
  ev.round = field(j, "round", where).get<std::uint32_t>();
  ev.court_id = get_string(j, "court_id", where);
  ev.seq = field(j, "seq", where).get<std::uint32_t>();
  const std::string kind = get_string(j, "kind", where);
  auto k = event_kind_from_string(kind);
  if (!k) fail(where, "unknown event kind '" + kind + "'");
  ev.kind = *k;
  ev.lp_id = get_string(j, "lp_id", where);
  const std::string reason = get_string(j, "reason", where);
  auto r = event_reason_from_string(reason);
  if (!r) fail(where, "unknown event reason '" + reason + "'");
  ev.reason = *r;
  if (auto it = j.find("payload"); it != j.end() && !it->is_null())
    ev.payload = lp_from_json(*it, where + "/payload");
  return ev;
}

Json policy_to_json(const PriorityPolicy& p) {
  Json mechanisms = Json::array();
  for (Mechanism m : p.mechanism_order) mechanisms.push_back(to_string(m));
  Json tiers = Json::array();
  for (const auto& group : p.tier_order) {
    if (group.size() == 1) {
      tiers.push_back(to_string(group.front()));
    } else {
      Json g = Json::array();
      for (SourceTier t : group) g.push_back(to_string(t));
      tiers.push_back(std::move(g));
    }
  }
  return Json{{"mechanism_order", std::move(mechanisms)},
              {"tier_order", std::move(tiers)}};
}

PriorityPolicy policy_from_json(const Json& j, const std::string& where) {
  PriorityPolicy p;
  const Json& mechanisms = field(j, "mechanism_order", where);
  if (!mechanisms.is_array()) fail(where, "'mechanism_order' must be an array");
  for (const Json& m : mechanisms) {
    if (!m.is_string()) fail(where, "mechanism ids must be strings M1..M8");
    auto mech = mechanism_from_string(m.get<std::string>());
    if (!mech) fail(where, "unknown mechanism '" + m.get<std::string>() + "'");
    p.mechanism_order.push_back(*mech);
  }
  // tier_order entries are tier names or arrays of tier names (a tie group).
  const Json& tiers = field(j, "tier_order", where);
  if (!tiers.is_array()) fail(where, "'tier_order' must be an array");
  for (const Json& entry : tiers) {
    std::vector<SourceTier> group;
    auto add = [&](const Json& name) {
      if (!name.is_string()) fail(where, "tier names must be strings");
      auto t = tier_from_string(name.get<std::string>());
      if (!t) fail(where, "unknown tier '" + name.get<std::string>() + "'");
      group.push_back(*t);
    };
    if (entry.is_array()) {
      for (const Json& name : entry) add(name);
    } else {
      add(entry);
    }
    p.tier_order.push_back(std::move(group));
  }
  return p;
}

}  // namespace rilsim
