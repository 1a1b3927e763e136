#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rilsim/court.hpp"
#include "rilsim/lp.hpp"
#include "rilsim/priority.hpp"

namespace rilsim {

struct SimulationParams {
  std::uint32_t gossip_interval = 1;
  double import_probability = 0.0;
  double mainstream_threshold = 0.0;  // theta, strict
  std::uint32_t rounds_total = 0;
  std::uint64_t seed = 0;
};

struct CommunitySpec {
  std::string id;
  bool has_lineage = false;
  bool lineage_explanatory = false;
  std::vector<std::string> viewpoint_package;

  /// Level-5 qualification: lineage present, explanatory, nonempty package.
  bool qualifies_level5() const {
    return has_lineage && lineage_explanatory && !viewpoint_package.empty();
  }
};

struct CourtSpec {
  std::string id;
  std::string community;
  RevisionPolicy revision_policy = RevisionPolicy::KeepBoth;
  double activity_rate = 0.0;
};

struct AgentSpec {
  std::string id;
  std::string community;
};

enum class PersonEventKind { Vow, Revoke, Death };

struct PersonEvent {
  PersonEventKind kind = PersonEventKind::Vow;
  std::uint32_t time = 0;
};

struct PersonRecord {
  std::string id;
  std::vector<PersonEvent> events;  // time-ordered
  bool willing_to_renew = false;
  bool performs_tasks = false;
  std::optional<std::string> community;
  bool performs_jihad_activity = false;
};

struct ProbeSpec {
  std::string action;
  Condition context;
  std::string agent;
};

struct Scenario {
  std::vector<CommunitySpec> communities;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<CourtSpec> courts;  // sorted by id after load
  std::vector<LegalProposition> seed_lps;
  std::vector<AgentSpec> agents;
  std::vector<PersonRecord> persons;
  std::map<std::string, std::vector<std::string>> adherence;    // assertion -> communities
  std::map<std::string, std::vector<std::string>> endorsement;  // system -> communities
  PriorityPolicy priority_policy;
  SimulationParams params;
  std::vector<ProbeSpec> probe_queries;
  std::vector<std::string> actions;  // generation vocabulary
  std::vector<std::string> tags;
  std::string digest;  // content hash of the source text

  std::optional<std::string> community_of_agent(std::string_view agent_id) const;
};

std::string_view to_string(PersonEventKind k);
std::optional<PersonEventKind> person_event_kind_from_string(std::string_view s);

/// FNV-1a 64 over the raw bytes, as 16 hex digits.
std::string content_digest(std::string_view bytes);

/// Parse + validate. Throws Error(ScenarioInvalid) carrying one Diagnostic
/// per problem, each with a JSON-pointer-style path.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

}  // namespace rilsim
