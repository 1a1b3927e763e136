#include "rilsim/query.hpp"

#include <algorithm>
#include <map>

#include "rilsim/errors.hpp"

namespace rilsim {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Obligatory: return "Obligatory";
    case Outcome::Permitted: return "Permitted";
    case Outcome::Forbidden: return "Forbidden";
    case Outcome::ReferToCourt: return "ReferToCourt";
  }
  return "?";
}

std::string_view to_string(ReferReason r) {
  switch (r) {
    case ReferReason::NoApplicableLP: return "NoApplicableLP";
    case ReferReason::UnresolvedConflict: return "UnresolvedConflict";
  }
  return "?";
}

std::string_view to_string(PlanOutcome o) {
  switch (o) {
    case PlanOutcome::Permissible: return "Permissible";
    case PlanOutcome::Impermissible: return "Impermissible";
    case PlanOutcome::NeedsCourt: return "NeedsCourt";
  }
  return "?";
}

namespace {

std::vector<LegalProposition> gather_pool(const SimulationState& state,
                                          std::optional<std::uint32_t> as_of_round) {
  // Gossip copies keep the donor id, so the same LP can be live at several
  // courts; the pool holds each id once.
  std::map<std::string, LegalProposition> by_id;
  for (const Court& court : state.courts) {
    if (as_of_round) {
      for (LegalProposition& lp : court.base_as_of(*as_of_round))
        by_id.emplace(lp.id, std::move(lp));
    } else {
      for (const auto& [id, lp] : court.base()) by_id.emplace(id, lp);
    }
  }
  for (const LegalProposition& lp : state.seeds) by_id.emplace(lp.id, lp);
  std::vector<LegalProposition> pool;
  pool.reserve(by_id.size());
  for (auto& [_, lp] : by_id) pool.push_back(std::move(lp));
  return pool;
}

Verdict refer(ReferReason reason, const SimulationState* state, const QueryContext& qc) {
  Verdict v;
  v.outcome = Outcome::ReferToCourt;
  v.refer_reason = reason;
  if (reason == ReferReason::UnresolvedConflict && state) {
    try {
      v.suggested_court = select_court(*state, qc);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCourts) throw;  // conflict among seeds only
    }
  }
  return v;
}

}  // namespace

Verdict decide_on_pool(std::span<const LegalProposition> pool,
                       std::string_view action, const Condition& context,
                       const QueryContext& qc, const PriorityPolicy& policy,
                       const SimulationState* state) {
  validate_policy(policy);

  std::vector<LegalProposition> candidates;
  for (const LegalProposition& lp : pool) {
    if (lp.withdrawn_at) continue;
    if (applicable(lp, action, context)) candidates.push_back(lp);
  }
  if (candidates.empty()) return refer(ReferReason::NoApplicableLP, state, qc);

  std::vector<LegalProposition> top = maximal_set(candidates, qc, policy);
  // A dominance cycle (possible under exotic mechanism orders) leaves no
  // undominated LP; that is a dilemma, not a decision.
  if (top.empty()) return refer(ReferReason::UnresolvedConflict, state, qc);

  bool any_forbidden = false, any_obligatory = false, any_permitted = false;
  for (const LegalProposition& lp : top) {
    switch (lp.modality) {
      case Modality::Forbidden: any_forbidden = true; break;
      case Modality::Obligatory: any_obligatory = true; break;
      case Modality::Permitted: any_permitted = true; break;
    }
  }
  if (any_forbidden && (any_obligatory || any_permitted))
    return refer(ReferReason::UnresolvedConflict, state, qc);

  Verdict v;
  v.outcome = any_forbidden ? Outcome::Forbidden
              : any_obligatory ? Outcome::Obligatory
                               : Outcome::Permitted;
  v.supporting_lps.reserve(top.size());
  for (const LegalProposition& lp : top) v.supporting_lps.push_back(lp.id);
  return v;
}

Verdict decide(const SimulationState& state, std::string_view action,
               const Condition& context, const QueryContext& qc,
               const PriorityPolicy& policy) {
  return decide_on_pool(gather_pool(state, std::nullopt), action, context, qc,
                        policy, &state);
}

Verdict decide_at_round(const SimulationState& state, std::uint32_t round,
                        std::string_view action, const Condition& context,
                        const QueryContext& qc, const PriorityPolicy& policy) {
  return decide_on_pool(gather_pool(state, round), action, context, qc, policy,
                        &state);
}

std::string select_court(const SimulationState& state, const QueryContext& qc) {
  if (state.courts.empty())
    throw Error(ErrorCode::NoCourts, "no court exists in this network");
  const Court* best = nullptr;
  int best_distance = 0;
  double best_centrality = 0.0;
  for (const Court& court : state.courts) {
    const int d = state.graph.distance(qc.agent_community, court.community());
    const double c = state.centrality.at(court.community());
    const bool better =
        !best || d < best_distance || (d == best_distance && c > best_centrality);
    // courts are iterated in ascending id order, which settles exact ties
    if (better) {
      best = &court;
      best_distance = d;
      best_centrality = c;
    }
  }
  return best->id();
}

PlanEvaluation evaluate_plan(const Plan& plan, const QueryContext& qc,
                             const SimulationState& state,
                             const PriorityPolicy& policy, PlanMode mode) {
  if (plan.steps.empty())
    throw Error(ErrorCode::EmptyPlan, "a plan needs at least one step");

  PlanEvaluation out;
  out.step_verdicts.reserve(plan.steps.size());
  for (const PlanStep& step : plan.steps) {
    Verdict v;
    if (mode == PlanMode::Historical) {
      if (!step.round)
        throw Error(ErrorCode::InvalidInput,
                    "historical evaluation needs a round for every step");
      v = decide_at_round(state, *step.round, step.action, step.context, qc, policy);
    } else {
      v = decide(state, step.action, step.context, qc, policy);
    }
    out.step_verdicts.push_back(std::move(v));
  }

  bool any_forbidden = false, any_refer = false;
  for (const Verdict& v : out.step_verdicts) {
    if (v.outcome == Outcome::Forbidden) any_forbidden = true;
    if (v.outcome == Outcome::ReferToCourt) any_refer = true;
  }
  out.overall = any_forbidden ? PlanOutcome::Impermissible
                : any_refer ? PlanOutcome::NeedsCourt
                            : PlanOutcome::Permissible;
  return out;
}

QueryContext context_for_agent(const SimulationState& state, std::string_view agent_id) {
  auto community = state.scenario->community_of_agent(agent_id);
  if (!community)
    throw Error(ErrorCode::InvalidInput,
                "unknown agent '" + std::string(agent_id) + "'");
  QueryContext qc;
  qc.asking_agent = std::string(agent_id);
  qc.agent_community = *community;
  qc.current_round = state.round;
  qc.graph = &state.graph;
  return qc;
}

}  // namespace rilsim
