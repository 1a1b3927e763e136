#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rilsim/priority.hpp"
#include "rilsim/sim.hpp"

namespace rilsim {

enum class Outcome { Obligatory, Permitted, Forbidden, ReferToCourt };
enum class ReferReason { NoApplicableLP, UnresolvedConflict };

std::string_view to_string(Outcome o);
std::string_view to_string(ReferReason r);

struct Verdict {
  Outcome outcome = Outcome::ReferToCourt;
  std::optional<ReferReason> refer_reason;  // present iff outcome is ReferToCourt
  std::vector<std::string> supporting_lps;  // maximal set ids, ascending
  std::optional<std::string> suggested_court;

  bool operator==(const Verdict&) const = default;
};

struct PlanStep {
  std::string action;
  Condition context;
  std::optional<std::uint32_t> round;  // required in Historical mode
};

struct Plan {
  std::vector<PlanStep> steps;
};

enum class PlanMode { Prospective, Historical };
enum class PlanOutcome { Permissible, Impermissible, NeedsCourt };

std::string_view to_string(PlanOutcome o);

struct PlanEvaluation {
  std::vector<Verdict> step_verdicts;
  PlanOutcome overall = PlanOutcome::Permissible;
};

/// The decision pipeline over an explicit LP pool (already deduplicated by
/// id): filter by applicability, rank by priority, resolve modalities, refer
/// on genuine conflict. `state` is only consulted to suggest a court.
Verdict decide_on_pool(std::span<const LegalProposition> pool,
                       std::string_view action, const Condition& context,
                       const QueryContext& qc, const PriorityPolicy& policy,
                       const SimulationState* state);

/// Pool = every live LP across all courts plus the seed LPs.
Verdict decide(const SimulationState& state, std::string_view action,
               const Condition& context, const QueryContext& qc,
               const PriorityPolicy& policy);

/// As decide, but against the bases as of the end of `round` (log replay).
Verdict decide_at_round(const SimulationState& state, std::uint32_t round,
                        std::string_view action, const Condition& context,
                        const QueryContext& qc, const PriorityPolicy& policy);

/// The court minimizing community distance to the asking agent; ties broken
/// by higher community centrality, then ascending court id. Throws
/// Error(NoCourts) when the state has no courts.
std::string select_court(const SimulationState& state, const QueryContext& qc);

/// Impermissible if any step is Forbidden; else NeedsCourt if any step
/// refers; else Permissible. Throws Error(EmptyPlan) on an empty plan and
/// Error(InvalidInput) when Historical steps carry no round.
PlanEvaluation evaluate_plan(const Plan& plan, const QueryContext& qc,
                             const SimulationState& state,
                             const PriorityPolicy& policy, PlanMode mode);

inline bool referral_needed(const Verdict& v) {
  return v.outcome == Outcome::ReferToCourt;
}

/// Query context for a scenario agent; throws Error(InvalidInput) for an
/// unknown agent id.
QueryContext context_for_agent(const SimulationState& state, std::string_view agent_id);

}  // namespace rilsim
