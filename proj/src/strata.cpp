#include "rilsim/strata.hpp"

#include <algorithm>

#include "rilsim/errors.hpp"

namespace rilsim {

StrataContext make_strata_context(const Scenario& scenario,
                                  const CommunityGraph& graph) {
  StrataContext ctx;
  const std::set<std::string> mainstream =
      graph.mainstream(scenario.params.mainstream_threshold);
  for (const CommunitySpec& c : scenario.communities) {
    if (!c.qualifies_level5()) continue;
    ctx.level5_communities.insert(c.id);
    if (mainstream.contains(c.id)) ctx.level6_communities.insert(c.id);
  }
  return ctx;
}

std::optional<int> membership_level(const PersonRecord& person,
                                    const StrataContext& ctx, std::uint32_t t) {
  bool vowed = false;
  bool vow_standing = false;  // most recent vow/revoke up to t is a vow
  for (const PersonEvent& e : person.events) {
    if (e.time > t) break;
    switch (e.kind) {
      case PersonEventKind::Vow:
        vowed = true;
        vow_standing = true;
        break;
      case PersonEventKind::Revoke:
        vow_standing = false;
        break;
      case PersonEventKind::Death:
        return std::nullopt;  // only death removes a person entirely
    }
  }
  if (!vowed) return std::nullopt;

  // Level chain, each step requiring the previous:
  //   0 ever vowed, 1 vow standing, 2 willing to renew, 3 performs tasks,
  //   4 has a community, 5 community qualifies, 6 community is mainstream,
  //   7 visible forward activity.
  int level = 0;
  if (!vow_standing) return level;
  level = 1;
  if (!person.willing_to_renew) return level;
  level = 2;
  if (!person.performs_tasks) return level;
  level = 3;
  if (!person.community) return level;
  level = 4;
  if (!ctx.level5_communities.contains(*person.community)) return level;
  level = 5;
  if (!ctx.level6_communities.contains(*person.community)) return level;
  level = 6;
  if (!person.performs_jihad_activity) return level;
  return 7;
}

std::vector<std::string> stratum(const std::vector<PersonRecord>& persons,
                                 const StrataContext& ctx, int n, std::uint32_t t) {
  if (n < 0 || n > 7)
    throw Error(ErrorCode::InvalidInput, "stratum level must be in 0..7");
  std::vector<std::string> out;
  for (const PersonRecord& p : persons) {
    auto level = membership_level(p, ctx, t);
    if (level && *level >= n) out.push_back(p.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Strict "over 75%" quorum in integer arithmetic; never evaluated on an
// empty pool (the callers signal that case instead).
bool strict_three_quarters(std::size_t count, std::size_t total) {
  return 4 * count > 3 * total;
}

std::size_t count_in(const std::vector<std::string>& relation,
                     const std::set<std::string>& pool) {
  return static_cast<std::size_t>(
      std::count_if(relation.begin(), relation.end(),
                    [&](const std::string& c) { return pool.contains(c); }));
}

}  // namespace

std::vector<std::string> AssertionClassification::labels() const {
  std::vector<std::string> out;
  if (point_of_view) out.push_back("PointOfView");
  if (mainstream) out.push_back("Mainstream");
  if (shared) out.push_back("Shared");
  if (shared_mainstream && *shared_mainstream) out.push_back("SharedMainstream");
  return out;
}

std::vector<std::string> EndorsementClassification::labels() const {
  std::vector<std::string> out;
  if (islamic) out.push_back("Islamic");
  if (mainstream_islamic) out.push_back("MainstreamIslamic");
  if (shared) out.push_back("Shared");
  if (shared_mainstream && *shared_mainstream) out.push_back("SharedMainstream");
  return out;
}

AssertionClassification classify_assertion(const std::string& assertion_id,
                                           const Scenario& scenario,
                                           const StrataContext& ctx) {
  if (ctx.level5_communities.empty())
    throw Error(ErrorCode::NoCommunities,
                "no level-5 community exists; classification is undefined");
  AssertionClassification out;
  out.level5_total = ctx.level5_communities.size();
  out.level6_total = ctx.level6_communities.size();

  static const std::vector<std::string> kNone;
  auto it = scenario.adherence.find(assertion_id);
  const std::vector<std::string>& adherents = it == scenario.adherence.end() ? kNone : it->second;

  const std::size_t l5 = count_in(adherents, ctx.level5_communities);
  const std::size_t l6 = count_in(adherents, ctx.level6_communities);
  out.point_of_view = l5 >= 1;
  out.mainstream = l6 >= 1;
  out.shared = strict_three_quarters(l5, out.level5_total);
  if (out.level6_total > 0)
    out.shared_mainstream = strict_three_quarters(l6, out.level6_total);
  return out;
}

EndorsementClassification classify_endorsement(const std::string& system_id,
                                               const Scenario& scenario,
                                               const StrataContext& ctx) {
  if (ctx.level5_communities.empty())
    throw Error(ErrorCode::NoCommunities,
                "no level-5 community exists; classification is undefined");
  EndorsementClassification out;
  out.level5_total = ctx.level5_communities.size();
  out.level6_total = ctx.level6_communities.size();

  static const std::vector<std::string> kNone;
  auto it = scenario.endorsement.find(system_id);
  const std::vector<std::string>& endorsers = it == scenario.endorsement.end() ? kNone : it->second;

  const std::size_t l5 = count_in(endorsers, ctx.level5_communities);
  const std::size_t l6 = count_in(endorsers, ctx.level6_communities);
  out.islamic = l5 >= 1;
  out.mainstream_islamic = l6 >= 1;
  out.shared = strict_three_quarters(l5, out.level5_total);
  if (out.level6_total > 0)
    out.shared_mainstream = strict_three_quarters(l6, out.level6_total);
  return out;
}

}  // namespace rilsim
