#include "rilsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rilsim/errors.hpp"
#include "rilsim/json_io.hpp"
#include "rilsim/log.hpp"
#include "rilsim/rng.hpp"

namespace rilsim {

std::string_view to_string(PersonEventKind k) {
  switch (k) {
    case PersonEventKind::Vow: return "vow";
    case PersonEventKind::Revoke: return "revoke";
    case PersonEventKind::Death: return "death";
  }
  return "?";
}

std::optional<PersonEventKind> person_event_kind_from_string(std::string_view s) {
  if (s == "vow") return PersonEventKind::Vow;
  if (s == "revoke") return PersonEventKind::Revoke;
  if (s == "death") return PersonEventKind::Death;
  return std::nullopt;
}

std::string content_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::optional<std::string> Scenario::community_of_agent(
    std::string_view agent_id) const {
  for (const AgentSpec& a : agents)
    if (a.id == agent_id) return a.community;
  return std::nullopt;
}

namespace {

class Validator {
 public:
  void add(std::string pointer, std::string message) {
    diagnostics_.push_back({std::move(pointer), std::move(message)});
  }
  bool ok() const { return diagnostics_.empty(); }
  std::vector<Diagnostic> take() { return std::move(diagnostics_); }

 private:
  std::vector<Diagnostic> diagnostics_;
};

bool probability_in_range(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ScenarioInvalid, std::string("scenario is not valid JSON: ") + e.what(),
                {{"", e.what()}});
  }
  if (!root.is_object())
    throw Error(ErrorCode::ScenarioInvalid, "scenario root must be an object",
                {{"", "root must be an object"}});

  Scenario sc;
  sc.digest = content_digest(json_text);
  Validator v;

  // -- communities ---------------------------------------------------------
  std::set<std::string> community_ids;
  if (auto it = root.find("communities"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& c = (*it)[i];
      const std::string path = "/communities/" + std::to_string(i);
      CommunitySpec spec;
      if (!c.is_object() || !c.contains("id") || !c["id"].is_string()) {
        v.add(path, "community must be an object with a string 'id'");
        continue;
      }
      spec.id = c["id"].get<std::string>();
      if (!community_ids.insert(spec.id).second)
        v.add(path + "/id", "duplicate community id '" + spec.id + "'");
      spec.has_lineage = c.value("has_lineage", false);
      spec.lineage_explanatory = c.value("lineage_explanatory", false);
      if (auto p = c.find("viewpoint_package"); p != c.end() && p->is_array())
        for (const Json& a : *p)
          if (a.is_string()) spec.viewpoint_package.push_back(a.get<std::string>());
      sc.communities.push_back(std::move(spec));
    }
  } else {
    v.add("/communities", "missing or non-array 'communities'");
  }

  // -- edges ----------------------------------------------------------------
  if (auto it = root.find("edges"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& e = (*it)[i];
      const std::string path = "/edges/" + std::to_string(i);
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        v.add(path, "edge must be a [community, community] pair");
        continue;
      }
      sc.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      for (int side = 0; side < 2; ++side) {
        const std::string id = e[side].get<std::string>();
        if (!community_ids.contains(id))
          v.add(path, "edge references unknown community '" + id + "'");
      }
    }
  } else {
    v.add("/edges", "missing or non-array 'edges'");
  }

  // -- courts ---------------------------------------------------------------
  std::set<std::string> court_ids;
  if (auto it = root.find("courts"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& c = (*it)[i];
      const std::string path = "/courts/" + std::to_string(i);
      CourtSpec spec;
      if (!c.is_object() || !c.contains("id") || !c["id"].is_string()) {
        v.add(path, "court must be an object with a string 'id'");
        continue;
      }
      spec.id = c["id"].get<std::string>();
      if (spec.id.empty() || spec.id == "seed" || spec.id.find(':') != std::string::npos)
        v.add(path + "/id",
              "court id must be nonempty, must not be 'seed', and must not contain ':'");
      if (!court_ids.insert(spec.id).second)
        v.add(path + "/id", "duplicate court id '" + spec.id + "'");
      if (c.contains("community") && c["community"].is_string()) {
        spec.community = c["community"].get<std::string>();
        if (!community_ids.contains(spec.community))
          v.add(path + "/community",
                "court placed in unknown community '" + spec.community + "'");
      } else {
        v.add(path + "/community", "missing court community");
      }
      if (auto r = c.find("revision_policy"); r != c.end() && r->is_string()) {
        auto policy = revision_policy_from_string(r->get<std::string>());
        if (!policy)
          v.add(path + "/revision_policy",
                "unknown revision policy '" + r->get<std::string>() + "'");
        else
          spec.revision_policy = *policy;
      } else {
        v.add(path + "/revision_policy", "missing revision_policy");
      }
      spec.activity_rate = c.value("activity_rate", -1.0);
      if (!probability_in_range(spec.activity_rate))
        v.add(path + "/activity_rate", "activity_rate must be in [0,1]");
      sc.courts.push_back(std::move(spec));
    }
  } else {
    v.add("/courts", "missing or non-array 'courts'");
  }
  std::sort(sc.courts.begin(), sc.courts.end(),
            [](const CourtSpec& a, const CourtSpec& b) { return a.id < b.id; });

  // -- seed LPs ---------------------------------------------------------------
  if (auto it = root.find("seed_lps"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& s = (*it)[i];
      const std::string path = "/seed_lps/" + std::to_string(i);
      try {
        LegalProposition lp;
        lp.id = "seed:" + std::to_string(i);
        const std::string modality =
            s.contains("modality") && s["modality"].is_string()
                ? s["modality"].get<std::string>()
                : "";
        auto m = modality_from_string(modality);
        if (!m) {
          v.add(path + "/modality", "unknown modality '" + modality + "'");
          continue;
        }
        lp.modality = *m;
        if (!s.contains("action") || !s["action"].is_string() ||
            !is_identifier(s["action"].get<std::string>())) {
          v.add(path + "/action", "action must be a lowercase identifier token");
          continue;
        }
        lp.action = s["action"].get<std::string>();
        lp.condition = s.contains("condition")
                           ? condition_from_json(s["condition"], path + "/condition")
                           : Condition::always();
        if (!s.contains("evidence")) {
          v.add(path + "/evidence", "missing evidence profile");
          continue;
        }
        lp.evidence = evidence_from_json(s["evidence"], path + "/evidence");
        if (lp.evidence.issuing_court)
          v.add(path + "/evidence/issuing_court",
                "seed LPs must not carry an issuing court");
        for (const std::string& problem : lp.evidence.validate())
          v.add(path + "/evidence", problem);
        sc.seed_lps.push_back(std::move(lp));
      } catch (const Error& e) {
        v.add(path, e.what());
      }
    }
  }

  // -- agents -----------------------------------------------------------------
  std::set<std::string> agent_ids;
  if (auto it = root.find("agents"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& a = (*it)[i];
      const std::string path = "/agents/" + std::to_string(i);
      if (!a.is_object() || !a.contains("id") || !a["id"].is_string() ||
          !a.contains("community") || !a["community"].is_string()) {
        v.add(path, "agent must be an object with string 'id' and 'community'");
        continue;
      }
      AgentSpec spec{a["id"].get<std::string>(), a["community"].get<std::string>()};
      if (!agent_ids.insert(spec.id).second)
        v.add(path + "/id", "duplicate agent id '" + spec.id + "'");
      if (!community_ids.contains(spec.community))
        v.add(path + "/community",
              "agent placed in unknown community '" + spec.community + "'");
      sc.agents.push_back(std::move(spec));
    }
  }

  // -- persons ----------------------------------------------------------------
  if (auto it = root.find("persons"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& p = (*it)[i];
      const std::string path = "/persons/" + std::to_string(i);
      if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) {
        v.add(path, "person must be an object with a string 'id'");
        continue;
      }
      PersonRecord rec;
      rec.id = p["id"].get<std::string>();
      bool dead = false;
      std::uint32_t last_time = 0;
      if (auto ev = p.find("events"); ev != p.end() && ev->is_array()) {
        for (std::size_t k = 0; k < ev->size(); ++k) {
          const Json& e = (*ev)[k];
          const std::string epath = path + "/events/" + std::to_string(k);
          if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() ||
              !e.contains("time") || !e["time"].is_number_unsigned()) {
            v.add(epath, "person event needs string 'kind' and unsigned 'time'");
            continue;
          }
          auto kind = person_event_kind_from_string(e["kind"].get<std::string>());
          if (!kind) {
            v.add(epath + "/kind",
                  "unknown person event kind '" + e["kind"].get<std::string>() + "'");
            continue;
          }
          PersonEvent pe{*kind, e["time"].get<std::uint32_t>()};
          if (dead) v.add(epath, "no events may follow a death event");
          if (!rec.events.empty() && pe.time < last_time)
            v.add(epath + "/time", "person events must be time-ordered");
          if (pe.kind == PersonEventKind::Death) dead = true;
          last_time = pe.time;
          rec.events.push_back(pe);
        }
      }
      rec.willing_to_renew = p.value("willing_to_renew", false);
      rec.performs_tasks = p.value("performs_tasks", false);
      if (auto c = p.find("community"); c != p.end() && c->is_string()) {
        rec.community = c->get<std::string>();
        if (!community_ids.contains(*rec.community))
          v.add(path + "/community",
                "person placed in unknown community '" + *rec.community + "'");
      }
      rec.performs_jihad_activity = p.value("performs_jihad_activity", false);
      sc.persons.push_back(std::move(rec));
    }
  }

  // -- adherence / endorsement -------------------------------------------------
  auto read_relation = [&](const char* key,
                           std::map<std::string, std::vector<std::string>>& out) {
    auto it = root.find(key);
    if (it == root.end()) return;
    if (!it->is_object()) {
      v.add(std::string("/") + key, "must map ids to arrays of community ids");
      return;
    }
    for (const auto& [id, arr] : it->items()) {
      const std::string path = std::string("/") + key + "/" + id;
      if (!arr.is_array()) {
        v.add(path, "must be an array of community ids");
        continue;
      }
      std::vector<std::string> communities;
      for (const Json& c : arr) {
        if (!c.is_string() || !community_ids.contains(c.get<std::string>())) {
          v.add(path, "unknown community in relation");
          continue;
        }
        communities.push_back(c.get<std::string>());
      }
      std::sort(communities.begin(), communities.end());
      communities.erase(std::unique(communities.begin(), communities.end()),
                        communities.end());
      out.emplace(id, std::move(communities));
    }
  };
  read_relation("adherence", sc.adherence);
  read_relation("endorsement", sc.endorsement);

  // -- priority policy -----------------------------------------------------------
  if (auto it = root.find("priority_policy"); it != root.end()) {
    try {
      sc.priority_policy = policy_from_json(*it, "/priority_policy");
    } catch (const Error& e) {
      v.add("/priority_policy", e.what());
      sc.priority_policy = PriorityPolicy::defaults();
    }
  } else {
    sc.priority_policy = PriorityPolicy::defaults();
  }
  for (const std::string& problem : sc.priority_policy.validate())
    v.add("/priority_policy", problem);

  // -- params ---------------------------------------------------------------------
  if (auto it = root.find("params"); it != root.end() && it->is_object()) {
    const Json& p = *it;
    sc.params.gossip_interval = p.value("gossip_interval", 0u);
    if (sc.params.gossip_interval == 0)
      v.add("/params/gossip_interval", "gossip_interval must be a positive integer");
    sc.params.import_probability = p.value("import_probability", -1.0);
    if (!probability_in_range(sc.params.import_probability))
      v.add("/params/import_probability", "import_probability must be in [0,1]");
    sc.params.mainstream_threshold = p.value("mainstream_threshold", -1.0);
    if (!probability_in_range(sc.params.mainstream_threshold))
      v.add("/params/mainstream_threshold", "mainstream_threshold must be in [0,1]");
    if (!p.contains("rounds_total") || !p["rounds_total"].is_number_unsigned() ||
        p["rounds_total"].get<std::uint64_t>() == 0)
      v.add("/params/rounds_total", "rounds_total must be a positive integer");
    else
      sc.params.rounds_total = p["rounds_total"].get<std::uint32_t>();
    if (p.contains("seed") && p["seed"].is_number())
      sc.params.seed = p["seed"].get<std::uint64_t>();
    else
      v.add("/params/seed", "missing integer seed");
  } else {
    v.add("/params", "missing 'params' object");
  }

  // -- probes -----------------------------------------------------------------------
  if (auto it = root.find("probe_queries"); it != root.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& q = (*it)[i];
      const std::string path = "/probe_queries/" + std::to_string(i);
      ProbeSpec probe;
      if (!q.is_object() || !q.contains("action") || !q["action"].is_string() ||
          !q.contains("agent") || !q["agent"].is_string()) {
        v.add(path, "probe must carry string 'action' and 'agent'");
        continue;
      }
      probe.action = q["action"].get<std::string>();
      probe.agent = q["agent"].get<std::string>();
      if (!agent_ids.contains(probe.agent))
        v.add(path + "/agent", "probe references unknown agent '" + probe.agent + "'");
      try {
        probe.context = q.contains("context")
                            ? condition_from_json(q["context"], path + "/context")
                            : Condition::always();
      } catch (const Error& e) {
        v.add(path + "/context", e.what());
      }
      sc.probe_queries.push_back(std::move(probe));
    }
  }

  // -- generation vocabulary ------------------------------------------------------
  auto read_tokens = [&](const char* key, std::vector<std::string>& out) {
    auto it = root.find(key);
    if (it == root.end()) return;
    if (!it->is_array()) {
      v.add(std::string("/") + key, "must be an array of identifier tokens");
      return;
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& t = (*it)[i];
      if (!t.is_string() || !is_identifier(t.get<std::string>()))
        v.add(std::string("/") + key + "/" + std::to_string(i),
              "must be a lowercase identifier token");
      else
        out.push_back(t.get<std::string>());
    }
  };
  read_tokens("actions", sc.actions);
  read_tokens("tags", sc.tags);
  // Fallback vocabulary: everything mentioned by seeds and probes.
  if (sc.actions.empty()) {
    std::set<std::string> derived;
    for (const auto& lp : sc.seed_lps) derived.insert(lp.action);
    for (const auto& probe : sc.probe_queries) derived.insert(probe.action);
    sc.actions.assign(derived.begin(), derived.end());
  }
  if (sc.tags.empty()) {
    std::set<std::string> derived;
    for (const auto& lp : sc.seed_lps)
      for (const Literal& l : lp.condition.literals()) derived.insert(l.tag);
    for (const auto& probe : sc.probe_queries)
      for (const Literal& l : probe.context.literals()) derived.insert(l.tag);
    sc.tags.assign(derived.begin(), derived.end());
  }
  std::sort(sc.actions.begin(), sc.actions.end());
  sc.actions.erase(std::unique(sc.actions.begin(), sc.actions.end()), sc.actions.end());
  std::sort(sc.tags.begin(), sc.tags.end());
  sc.tags.erase(std::unique(sc.tags.begin(), sc.tags.end()), sc.tags.end());

  // Graph construction reuses the same checks (connectivity in particular)
  // so validate and simulate cannot drift apart.
  if (v.ok()) {
    std::vector<std::string> ids;
    for (const auto& c : sc.communities) ids.push_back(c.id);
    std::map<std::string, std::string> placement;
    for (const auto& c : sc.courts) placement.emplace(c.id, c.community);
    try {
      (void)CommunityGraph::build(ids, sc.edges, placement);
    } catch (const Error& e) {
      v.add("/edges", e.what());
    }
  }

  if (!v.ok()) {
    auto diagnostics = v.take();
    std::ostringstream msg;
    msg << "scenario failed validation with " << diagnostics.size() << " problem(s)";
    throw Error(ErrorCode::ScenarioInvalid, msg.str(), std::move(diagnostics));
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  log_line("loading scenario " + path);
  return parse_scenario(buf.str());
}

}  // namespace rilsim
