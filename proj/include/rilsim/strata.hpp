#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rilsim/graph.hpp"
#include "rilsim/scenario.hpp"

namespace rilsim {

// Community pools behind the membership levels: level-5 communities qualify
// by profile (lineage + explanatory lineage + nonempty viewpoint package);
// level-6 communities are the level-5 ones whose centrality strictly exceeds
// the mainstream threshold.
struct StrataContext {
  std::set<std::string> level5_communities;
  std::set<std::string> level6_communities;
};

StrataContext make_strata_context(const Scenario& scenario, const CommunityGraph& graph);

/// Membership level 0..7 at time t, or nullopt when the person is dead at t
/// or has never vowed by t. The levels chain: each level requires all the
/// previous ones.
std::optional<int> membership_level(const PersonRecord& person,
                                    const StrataContext& ctx, std::uint32_t t);

/// Ids of persons whose level at t is >= n, sorted.
std::vector<std::string> stratum(const std::vector<PersonRecord>& persons,
                                 const StrataContext& ctx, int n, std::uint32_t t);

struct AssertionClassification {
  bool point_of_view = false;  // some level-5 community adheres
  bool mainstream = false;     // some level-6 community adheres
  bool shared = false;         // strictly more than 75% of level-5 communities
  std::optional<bool> shared_mainstream;  // nullopt when no level-6 community exists
  std::size_t level5_total = 0;
  std::size_t level6_total = 0;

  std::vector<std::string> labels() const;
};

struct EndorsementClassification {
  bool islamic = false;
  bool mainstream_islamic = false;
  bool shared = false;
  std::optional<bool> shared_mainstream;
  std::size_t level5_total = 0;
  std::size_t level6_total = 0;

  std::vector<std::string> labels() const;
};

/// Throws Error(NoCommunities) when no level-5 community exists; the quorum
/// labels are undefined then, not defaulted. The shared quorums are strict:
/// 4 * adherents > 3 * total, evaluated in integers.
AssertionClassification classify_assertion(const std::string& assertion_id,
                                           const Scenario& scenario,
                                           const StrataContext& ctx);

EndorsementClassification classify_endorsement(const std::string& system_id,
                                               const Scenario& scenario,
                                               const StrataContext& ctx);

}  // namespace rilsim
