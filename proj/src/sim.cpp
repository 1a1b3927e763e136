#include "rilsim/sim.hpp"

#include <algorithm>

#include "rilsim/errors.hpp"
#include "rilsim/json_io.hpp"
#include "rilsim/log.hpp"
#include "rilsim/rng.hpp"
#include "rilsim/version.hpp"

namespace rilsim {

const Court* SimulationState::find_court(std::string_view id) const {
  auto it = std::lower_bound(courts.begin(), courts.end(), id,
                             [](const Court& c, std::string_view v) { return c.id() < v; });
  if (it == courts.end() || it->id() != id) return nullptr;
  return &*it;
}

SimulationState init_state(std::shared_ptr<const Scenario> scenario,
                           std::vector<CourtEvent>* seed_events) {
  const Scenario& sc = *scenario;
  SimulationState state;
  state.params = sc.params;
  state.seeds = sc.seed_lps;
  state.scenario = scenario;

  std::vector<std::string> community_ids;
  community_ids.reserve(sc.communities.size());
  for (const auto& c : sc.communities) community_ids.push_back(c.id);
  std::map<std::string, std::string> placement;
  for (const auto& c : sc.courts) placement.emplace(c.id, c.community);
  state.graph = CommunityGraph::build(community_ids, sc.edges, placement);
  state.centrality = state.graph.centrality_map();

  state.courts.reserve(sc.courts.size());
  for (const CourtSpec& spec : sc.courts)
    state.courts.emplace_back(spec.id, spec.community, spec.revision_policy,
                              spec.activity_rate);
  std::sort(state.courts.begin(), state.courts.end(),
            [](const Court& a, const Court& b) { return a.id() < b.id(); });

  if (seed_events) {
    // Round 0: the codified original sources are announced once, publicly.
    std::uint32_t seq = 0;
    for (const LegalProposition& lp : state.seeds) {
      CourtEvent ev;
      ev.kind = EventKind::Issue;
      ev.lp_id = lp.id;
      ev.round = 0;
      ev.reason = EventReason::NewJudgement;
      ev.payload = lp;
      ev.seq = seq++;
      ev.court_id = "seed";
      seed_events->push_back(std::move(ev));
    }
  }
  return state;
}

std::set<std::string> mainstream_communities(const SimulationState& state) {
  return state.graph.mainstream(state.params.mainstream_threshold);
}

namespace {

struct GeneratedLp {
  Modality modality;
  std::string action;
  Condition condition;
};

// Uniform draw over the scenario vocabulary: modality over the three values,
// action over `actions`, condition size over {0,1,2} (capped by the tag
// count) with distinct uniformly-drawn tags and uniform polarity.
GeneratedLp generate_lp(SplitMix64& rng, const Scenario& sc) {
  GeneratedLp g;
  g.modality = static_cast<Modality>(rng.uniform_below(3));
  g.action = sc.actions[rng.uniform_below(sc.actions.size())];
  const std::uint64_t max_size = std::min<std::uint64_t>(2, sc.tags.size());
  const std::uint64_t size = rng.uniform_below(max_size + 1);
  std::vector<Literal> literals;
  while (literals.size() < size) {
    Literal lit;
    lit.tag = sc.tags[rng.uniform_below(sc.tags.size())];
    lit.positive = rng.uniform_below(2) == 0;
    const bool duplicate =
        std::any_of(literals.begin(), literals.end(),
                    [&](const Literal& l) { return l.tag == lit.tag; });
    if (!duplicate) literals.push_back(std::move(lit));
  }
  g.condition = Condition::from_literals(std::move(literals));
  return g;
}

void issue_phase_for_court(Court& court, std::uint32_t round,
                           const SimulationState& state, const Scenario& sc,
                           const RevisionContext& ctx) {
  SplitMix64 rng = substream(state.params.seed, round, court.id(), kIssuePhase);
  if (rng.next_double() >= court.activity_rate()) return;
  if (sc.actions.empty()) return;
  GeneratedLp g = generate_lp(rng, sc);
  EvidenceProfile evidence;
  evidence.tier = SourceTier::CourtJudgement;
  evidence.issuing_court = court.id();
  evidence.issue_time = round;
  // scholar metadata defaults to rank 0 / not involved for court output
  court.issue(g.modality, std::move(g.action), std::move(g.condition),
              std::move(evidence), round, EventReason::NewJudgement, ctx);
}

}  // namespace

std::vector<CourtEvent> step(SimulationState& state, ExecMode mode) {
  if (state.round >= state.params.rounds_total)
    throw Error(ErrorCode::InvalidInput, "simulation already ran all rounds");
  const std::uint32_t round = ++state.round;
  const Scenario& sc = *state.scenario;
  RevisionContext ctx{&state.graph, &sc.priority_policy};

  std::vector<std::size_t> log_mark(state.courts.size());
  for (std::size_t i = 0; i < state.courts.size(); ++i)
    log_mark[i] = state.courts[i].log().size();

  // Phase 1: issuance. Courts are independent here (no court reads another
  // court's state), so the parallel loop is observationally identical to the
  // serial one.
  const auto n = static_cast<std::ptrdiff_t>(state.courts.size());
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      issue_phase_for_court(state.courts[i], round, state, sc, ctx);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      issue_phase_for_court(state.courts[i], round, state, sc, ctx);
  }

  // Phase 2: gossip. Donor bases are snapshotted at the end of phase 1, so
  // an import this round never cascades into another import this round.
  if (round % state.params.gossip_interval == 0 && state.courts.size() >= 2) {
    std::vector<std::vector<LegalProposition>> snapshot;
    snapshot.reserve(state.courts.size());
    for (const Court& c : state.courts) snapshot.push_back(c.current_base());

    std::vector<double> weight(state.courts.size());
    for (std::size_t i = 0; i < state.courts.size(); ++i)
      weight[i] = state.centrality.at(state.courts[i].community());

    for (std::size_t i = 0; i < state.courts.size(); ++i) {
      Court& importer = state.courts[i];
      SplitMix64 rng = substream(state.params.seed, round, importer.id(), kGossipPhase);
      if (rng.next_double() >= state.params.import_probability) continue;

      const std::size_t donor = weighted_choice_excluding(rng, weight, i);
      const auto& donor_base = snapshot[donor];
      if (donor_base.empty()) continue;
      const LegalProposition& pick = donor_base[rng.uniform_below(donor_base.size())];
      importer.import_lp(pick, round, ctx);
    }
  }

  std::vector<CourtEvent> events;
  for (std::size_t i = 0; i < state.courts.size(); ++i) {
    const auto& log = state.courts[i].log();
    for (std::size_t k = log_mark[i]; k < log.size(); ++k) events.push_back(log[k]);
  }
  return events;
}

SimulationState run(std::shared_ptr<const Scenario> scenario, const RunOptions& options) {
  auto effective = std::make_shared<Scenario>(*scenario);
  if (options.seed_override) effective->params.seed = *options.seed_override;
  if (options.rounds_override) effective->params.rounds_total = *options.rounds_override;

  std::vector<CourtEvent> seed_events;
  SimulationState state = init_state(effective, &seed_events);
  if (options.on_round) options.on_round(0, seed_events);
  if (options.after_round) options.after_round(state);

  for (std::uint32_t r = 1; r <= state.params.rounds_total; ++r) {
    std::vector<CourtEvent> events = step(state, options.mode);
    if (options.on_round) options.on_round(r, events);
    if (options.after_round) options.after_round(state);
  }
  log_line("run complete: " + std::to_string(state.round) + " rounds, " +
           std::to_string(state.courts.size()) + " courts");
  return state;
}

std::size_t weighted_choice_excluding(SplitMix64& rng,
                                      std::span<const double> weights,
                                      std::size_t excluded) {
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (j != excluded) total += weights[j];
  const double u = rng.next_double() * total;
  double cumulative = 0.0;
  std::size_t choice = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j == excluded) continue;
    cumulative += weights[j];
    choice = j;  // fallback stays on the last candidate if u rounds to total
    if (u < cumulative) break;
  }
  return choice;
}

std::string events_to_jsonl(const std::vector<CourtEvent>& events) {
  std::string out;
  for (const CourtEvent& ev : events) {
    out += event_to_json(ev).dump();
    out += '\n';
  }
  return out;
}

std::string state_to_json(const SimulationState& state, std::uint64_t effective_seed) {
  const Scenario& sc = *state.scenario;
  Json j;
  j["schema"] = "rilsim-state";
  j["version"] = kVersion;
  j["scenario_digest"] = sc.digest;
  j["seed"] = effective_seed;
  j["round"] = state.round;

  Json scenario_json;
  {
    Json communities = Json::array();
    for (const auto& c : sc.communities) {
      Json cj;
      cj["id"] = c.id;
      cj["has_lineage"] = c.has_lineage;
      cj["lineage_explanatory"] = c.lineage_explanatory;
      cj["viewpoint_package"] = c.viewpoint_package;
      communities.push_back(std::move(cj));
    }
    scenario_json["communities"] = std::move(communities);
    Json edges = Json::array();
    for (const auto& [a, b] : sc.edges) edges.push_back(Json::array({a, b}));
    scenario_json["edges"] = std::move(edges);
    Json courts = Json::array();
    for (const auto& c : sc.courts) {
      Json cj;
      cj["id"] = c.id;
      cj["community"] = c.community;
      cj["revision_policy"] = to_string(c.revision_policy);
      cj["activity_rate"] = c.activity_rate;
      courts.push_back(std::move(cj));
    }
    scenario_json["courts"] = std::move(courts);
    Json seeds = Json::array();
    for (const auto& lp : sc.seed_lps) {
      Json sj;
      sj["modality"] = to_string(lp.modality);
      sj["action"] = lp.action;
      sj["condition"] = condition_to_json(lp.condition);
      sj["evidence"] = evidence_to_json(lp.evidence);
      seeds.push_back(std::move(sj));
    }
    scenario_json["seed_lps"] = std::move(seeds);
    Json agents = Json::array();
    for (const auto& a : sc.agents)
      agents.push_back(Json{{"id", a.id}, {"community", a.community}});
    scenario_json["agents"] = std::move(agents);
    Json persons = Json::array();
    for (const auto& p : sc.persons) {
      Json pj;
      pj["id"] = p.id;
      Json events = Json::array();
      for (const auto& e : p.events)
        events.push_back(Json{{"kind", to_string(e.kind)}, {"time", e.time}});
      pj["events"] = std::move(events);
      pj["willing_to_renew"] = p.willing_to_renew;
      pj["performs_tasks"] = p.performs_tasks;
      pj["community"] = p.community ? Json(*p.community) : Json(nullptr);
      pj["performs_jihad_activity"] = p.performs_jihad_activity;
      persons.push_back(std::move(pj));
    }
    scenario_json["persons"] = std::move(persons);
    Json adherence;
    for (const auto& [id, communities_list] : sc.adherence)
      adherence[id] = communities_list;
    scenario_json["adherence"] = std::move(adherence);
    Json endorsement;
    for (const auto& [id, communities_list] : sc.endorsement)
      endorsement[id] = communities_list;
    scenario_json["endorsement"] = std::move(endorsement);
    scenario_json["priority_policy"] = policy_to_json(sc.priority_policy);
    Json params;
    params["gossip_interval"] = sc.params.gossip_interval;
    params["import_probability"] = sc.params.import_probability;
    params["mainstream_threshold"] = sc.params.mainstream_threshold;
    params["rounds_total"] = sc.params.rounds_total;
    params["seed"] = sc.params.seed;
    scenario_json["params"] = std::move(params);
    Json probes = Json::array();
    for (const auto& q : sc.probe_queries) {
      Json qj;
      qj["action"] = q.action;
      qj["context"] = condition_to_json(q.context);
      qj["agent"] = q.agent;
      probes.push_back(std::move(qj));
    }
    scenario_json["probe_queries"] = std::move(probes);
    scenario_json["actions"] = sc.actions;
    scenario_json["tags"] = sc.tags;
  }
  j["scenario"] = std::move(scenario_json);

  Json courts = Json::array();
  for (const Court& c : state.courts) {
    Json cj;
    cj["id"] = c.id();
    cj["community"] = c.community();
    cj["revision_policy"] = to_string(c.revision_policy());
    cj["activity_rate"] = c.activity_rate();
    Json log = Json::array();
    for (const CourtEvent& ev : c.log()) log.push_back(event_to_json(ev));
    cj["log"] = std::move(log);
    courts.push_back(std::move(cj));
  }
  j["courts"] = std::move(courts);
  return j.dump(2) + "\n";
}

SimulationState state_from_json(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput,
                std::string("state snapshot is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "rilsim-state")
    throw Error(ErrorCode::InvalidInput, "not a rilsim state snapshot");

  auto scenario = std::make_shared<Scenario>(parse_scenario(j.at("scenario").dump()));
  scenario->params.seed = j.at("seed").get<std::uint64_t>();
  scenario->digest = j.at("scenario_digest").get<std::string>();

  SimulationState state = init_state(scenario, nullptr);
  state.round = j.at("round").get<std::uint32_t>();

  const Json& courts = j.at("courts");
  if (courts.size() != state.courts.size())
    throw Error(ErrorCode::InvalidInput, "state snapshot court list mismatch");
  std::vector<Court> replayed;
  replayed.reserve(state.courts.size());
  for (const Json& cj : courts) {
    const std::string id = cj.at("id").get<std::string>();
    const Court* shell = state.find_court(id);
    if (!shell)
      throw Error(ErrorCode::InvalidInput, "state snapshot names unknown court '" + id + "'");
    std::vector<CourtEvent> events;
    for (const Json& ej : cj.at("log"))
      events.push_back(event_from_json(ej, "court '" + id + "' log"));
    replayed.push_back(Court::replay(id, shell->community(), shell->revision_policy(),
                                     shell->activity_rate(), events));
  }
  std::sort(replayed.begin(), replayed.end(),
            [](const Court& a, const Court& b) { return a.id() < b.id(); });
  state.courts = std::move(replayed);
  return state;
}

}  // namespace rilsim
