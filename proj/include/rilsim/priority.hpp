#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rilsim/graph.hpp"
#include "rilsim/lp.hpp"

namespace rilsim {

// The eight precedence mechanisms. M1/M3/M4 compare source-tier rank, M2
// compares science generation (Science-tier pairs only), M5 scholar rank,
// M6 scholar involvement, M7 recency within one issuing court, M8 community
// proximity to the asking agent.
enum class Mechanism : std::uint8_t { M1, M2, M3, M4, M5, M6, M7, M8 };

inline constexpr int kMechanismCount = 8;

std::string_view to_string(Mechanism m);
std::optional<Mechanism> mechanism_from_string(std::string_view s);

// tier_order is a list of tie groups, strongest first. The default groups
// Revelation with CourtJudgement so that court output is tier-neutral for
// M1/M3/M4 and gets distinguished by recency (M7) and proximity (M8) instead.
struct PriorityPolicy {
  std::vector<Mechanism> mechanism_order;
  std::vector<std::vector<SourceTier>> tier_order;

  static PriorityPolicy defaults();

  /// Violated constraints, empty when the policy is valid. Checks that
  /// mechanism_order is a permutation of the 8 mechanisms, tier_order is a
  /// permutation of the 6 tiers, and the tier ranks honor M1/M3/M4.
  std::vector<std::string> validate() const;

  /// Tie-group index of a tier (lower = stronger). Requires a valid policy.
  int tier_rank(SourceTier tier) const;
};

/// Throws Error(InvalidPolicy) naming the first violated constraint.
void validate_policy(const PriorityPolicy& policy);

struct QueryContext {
  std::string asking_agent;
  std::string agent_community;
  std::uint32_t current_round = 0;
  const CommunityGraph* graph = nullptr;
};

enum class Ordering { APrecedes, BPrecedes, Tie };

/// Lexicographic evaluation over policy.mechanism_order; the first mechanism
/// that strictly distinguishes the two LPs decides. Ties after all eight are
/// returned as Tie, never broken by id: they are real dilemmas and the query
/// engine routes them to a court.
Ordering compare(const LegalProposition& a, const LegalProposition& b,
                 const QueryContext& qc, const PriorityPolicy& policy);

/// All LPs not strictly preceded by any other input LP, ordered by id.
/// Precondition (caller's): inputs applicable and non-withdrawn.
std::vector<LegalProposition> maximal_set(std::span<const LegalProposition> lps,
                                          const QueryContext& qc,
                                          const PriorityPolicy& policy);

}  // namespace rilsim
