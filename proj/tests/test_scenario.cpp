#include <doctest.h>

#include <fstream>
#include <sstream>

#include "rilsim/errors.hpp"
#include "rilsim/json_io.hpp"
#include "rilsim/scenario.hpp"

using namespace rilsim;

namespace {

Json reference_json() {
  static const Json cached = [] {
    std::ifstream in(std::string(RILSIM_TEST_DATA_DIR) + "/reference_scenario.json");
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
  }();
  return cached;
}

std::vector<Diagnostic> diagnostics_for(const Json& j) {
  try {
    parse_scenario(j.dump());
    return {};
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::ScenarioInvalid);
    return e.diagnostics();
  }
}

bool any_diagnostic_mentions(const std::vector<Diagnostic>& diagnostics,
                             const std::string& needle) {
  for (const auto& d : diagnostics)
    if (d.message.find(needle) != std::string::npos ||
        d.pointer.find(needle) != std::string::npos)
      return true;
  return false;
}

}  // namespace

TEST_CASE("the reference scenario parses cleanly") {
  const Scenario sc = parse_scenario(reference_json().dump());
  CHECK(sc.courts.size() == 20);
  CHECK(sc.communities.size() == 5);
  CHECK(sc.seed_lps.size() == 12);
  CHECK(sc.probe_queries.size() == 20);
  CHECK(sc.params.rounds_total == 200);
  CHECK(sc.params.seed == 42);
  CHECK(sc.digest.size() == 16);
  CHECK(sc.seed_lps[0].id == "seed:0");
}

TEST_CASE("a disconnected community is reported by name") {
  Json j = reference_json();
  j["edges"].erase(3);  // drop com3-com4, isolating com4
  const auto diagnostics = diagnostics_for(j);
  REQUIRE_FALSE(diagnostics.empty());
  CHECK(any_diagnostic_mentions(diagnostics, "com4"));
}

TEST_CASE("a seven-entry mechanism order is not a permutation of 8") {
  Json j = reference_json();
  j["priority_policy"]["mechanism_order"].erase(7);
  const auto diagnostics = diagnostics_for(j);
  REQUIRE_FALSE(diagnostics.empty());
  CHECK(any_diagnostic_mentions(diagnostics, "not a permutation"));
}

TEST_CASE("a tier order ranking revelation above science violates M1") {
  Json j = reference_json();
  j["priority_policy"]["tier_order"] =
      Json::array({"Revelation", "Science", "ConfirmedInterpretation",
                   "DirectWitness", "IndirectWitness", "CourtJudgement"});
  const auto diagnostics = diagnostics_for(j);
  REQUIRE_FALSE(diagnostics.empty());
  CHECK(any_diagnostic_mentions(diagnostics, "violates M1"));
}

TEST_CASE("out-of-range probabilities are rejected with field paths") {
  Json j = reference_json();
  j["courts"][0]["activity_rate"] = 1.5;
  j["params"]["import_probability"] = -0.1;
  const auto diagnostics = diagnostics_for(j);
  CHECK(any_diagnostic_mentions(diagnostics, "/courts/0/activity_rate"));
  CHECK(any_diagnostic_mentions(diagnostics, "/params/import_probability"));
}

TEST_CASE("court ids may not collide with the seed pseudo-court") {
  Json j = reference_json();
  j["courts"][0]["id"] = "seed";
  CHECK(any_diagnostic_mentions(diagnostics_for(j), "/courts/0/id"));
}

TEST_CASE("seed LPs may not carry an issuing court") {
  Json j = reference_json();
  j["seed_lps"][0]["evidence"]["tier"] = "CourtJudgement";
  j["seed_lps"][0]["evidence"]["issuing_court"] = "c00";
  CHECK_FALSE(diagnostics_for(j).empty());
}

TEST_CASE("person events must be ordered and death must be final") {
  Json j = reference_json();
  j["persons"][0]["events"] = Json::array(
      {Json{{"kind", "death"}, {"time", 3}}, Json{{"kind", "vow"}, {"time", 5}}});
  CHECK(any_diagnostic_mentions(diagnostics_for(j), "death"));

  j = reference_json();
  j["persons"][0]["events"] = Json::array(
      {Json{{"kind", "vow"}, {"time", 5}}, Json{{"kind", "revoke"}, {"time", 3}}});
  CHECK(any_diagnostic_mentions(diagnostics_for(j), "time-ordered"));
}

TEST_CASE("unknown references are caught") {
  Json j = reference_json();
  j["agents"][0]["community"] = "ghost";
  CHECK(any_diagnostic_mentions(diagnostics_for(j), "/agents/0/community"));

  j = reference_json();
  j["probe_queries"][0]["agent"] = "ghost";
  CHECK(any_diagnostic_mentions(diagnostics_for(j), "/probe_queries/0/agent"));

  j = reference_json();
  j["adherence"]["alcohol_prohibition"].push_back("ghost");
  CHECK_FALSE(diagnostics_for(j).empty());
}

TEST_CASE("vocabulary falls back to seeds and probes when absent") {
  Json j = reference_json();
  j.erase("actions");
  j.erase("tags");
  const Scenario sc = parse_scenario(j.dump());
  CHECK_FALSE(sc.actions.empty());
  // every seed action is in the derived vocabulary
  for (const auto& lp : sc.seed_lps) {
    CHECK(std::find(sc.actions.begin(), sc.actions.end(), lp.action) !=
          sc.actions.end());
  }
  CHECK(std::find(sc.tags.begin(), sc.tags.end(), "ramadan") != sc.tags.end());
}

TEST_CASE("digest changes with content") {
  const std::string text = reference_json().dump();
  CHECK(content_digest(text) != content_digest(text + " "));
  CHECK(content_digest(text) == content_digest(text));
}

TEST_CASE("policy json round-trips including tie groups") {
  const PriorityPolicy p = PriorityPolicy::defaults();
  const PriorityPolicy back = policy_from_json(policy_to_json(p), "test");
  CHECK(back.mechanism_order == p.mechanism_order);
  CHECK(back.tier_order == p.tier_order);
}

TEST_CASE("lp json round-trips") {
  LegalProposition lp;
  lp.id = "c1:7";
  lp.modality = Modality::Forbidden;
  lp.action = "act";
  lp.condition = Condition::from_literals({{"night", true}, {"minor", false}});
  lp.evidence.tier = SourceTier::CourtJudgement;
  lp.evidence.issuing_court = "c1";
  lp.evidence.issue_time = 9;
  lp.evidence.scholar_rank = 4;
  lp.withdrawn_at = 12;
  CHECK(lp_from_json(lp_to_json(lp), "test") == lp);
}
