#include <doctest.h>

#include "oracles.hpp"
#include "rilsim/errors.hpp"
#include "rilsim/rng.hpp"
#include "rilsim/scenario.hpp"
#include "rilsim/strata.hpp"

using namespace rilsim;

namespace {

// Two qualified communities (one mainstream), one unqualified.
struct Fixture {
  Scenario sc;
  CommunityGraph graph;
  StrataContext ctx;

  Fixture() {
    CommunitySpec hub{"hub", true, true, {"v1"}};
    CommunitySpec rim{"rim", true, true, {"v1"}};
    CommunitySpec loose{"loose", false, false, {}};
    sc.communities = {hub, rim, loose};
    sc.edges = {{"hub", "rim"}, {"hub", "loose"}};
    sc.params.mainstream_threshold = 0.6;  // hub: 1.0, rim/loose: 0.5
    graph = CommunityGraph::build({"hub", "rim", "loose"}, sc.edges, {});
    ctx = make_strata_context(sc, graph);
  }
};

PersonRecord person(std::vector<PersonEvent> events, bool renew, bool tasks,
                    std::optional<std::string> community, bool jihad) {
  PersonRecord p;
  p.id = "p";
  p.events = std::move(events);
  p.willing_to_renew = renew;
  p.performs_tasks = tasks;
  p.community = std::move(community);
  p.performs_jihad_activity = jihad;
  return p;
}

}  // namespace

TEST_CASE("strata context splits qualified and mainstream communities") {
  Fixture f;
  CHECK(f.ctx.level5_communities == std::set<std::string>{"hub", "rim"});
  CHECK(f.ctx.level6_communities == std::set<std::string>{"hub"});
}

TEST_CASE("membership level walks the chain") {
  Fixture f;
  const PersonEvent vow{PersonEventKind::Vow, 1};

  CHECK(membership_level(person({}, true, true, "hub", true), f.ctx, 10) ==
        std::nullopt);  // never vowed
  CHECK(membership_level(person({vow}, false, false, {}, false), f.ctx, 10) == 1);
  CHECK(membership_level(person({vow}, true, false, {}, false), f.ctx, 10) == 2);
  CHECK(membership_level(person({vow}, true, true, {}, false), f.ctx, 10) == 3);
  CHECK(membership_level(person({vow}, true, true, "loose", false), f.ctx, 10) == 4);
  CHECK(membership_level(person({vow}, true, true, "rim", false), f.ctx, 10) == 5);
  CHECK(membership_level(person({vow}, true, true, "rim", true), f.ctx, 10) == 5);
  CHECK(membership_level(person({vow}, true, true, "hub", false), f.ctx, 10) == 6);
  CHECK(membership_level(person({vow}, true, true, "hub", true), f.ctx, 10) == 7);
}

TEST_CASE("a revoked vow drops the person to level 0, re-vowing restores") {
  Fixture f;
  const auto p = person({{PersonEventKind::Vow, 1},
                         {PersonEventKind::Revoke, 5},
                         {PersonEventKind::Vow, 9}},
                        true, true, "hub", false);
  CHECK(membership_level(p, f.ctx, 0) == std::nullopt);  // not yet vowed
  CHECK(membership_level(p, f.ctx, 3) == 6);
  CHECK(membership_level(p, f.ctx, 5) == 0);  // revoked, still retrospective
  CHECK(membership_level(p, f.ctx, 9) == 6);
}

TEST_CASE("death removes a person from every stratum") {
  Fixture f;
  const auto p = person({{PersonEventKind::Vow, 1}, {PersonEventKind::Death, 7}},
                        true, true, "hub", true);
  CHECK(membership_level(p, f.ctx, 6) == 7);
  CHECK(membership_level(p, f.ctx, 7) == std::nullopt);
  CHECK(membership_level(p, f.ctx, 20) == std::nullopt);
}

TEST_CASE("strata nest and match the per-person oracle on random histories") {
  Fixture f;
  SplitMix64 rng(31337);
  std::vector<PersonRecord> population;
  const std::vector<std::optional<std::string>> communities{
      std::nullopt, "hub", "rim", "loose"};
  for (int i = 0; i < 50; ++i) {
    std::vector<PersonEvent> events;
    std::uint32_t t = 0;
    const auto n = rng.uniform_below(5);
    for (std::uint64_t k = 0; k < n; ++k) {
      t += 1 + static_cast<std::uint32_t>(rng.uniform_below(4));
      const auto kind = rng.uniform_below(8);
      if (kind < 4)
        events.push_back({PersonEventKind::Vow, t});
      else if (kind < 7)
        events.push_back({PersonEventKind::Revoke, t});
      else {
        events.push_back({PersonEventKind::Death, t});
        break;
      }
    }
    auto p = person(std::move(events), rng.uniform_below(2) == 0,
                    rng.uniform_below(2) == 0,
                    communities[rng.uniform_below(communities.size())],
                    rng.uniform_below(2) == 0);
    p.id = "p" + std::to_string(i);
    population.push_back(std::move(p));
  }

  for (std::uint32_t t : {0u, 3u, 8u, 15u, 30u}) {
    for (int n = 0; n < 7; ++n) {
      const auto upper = stratum(population, f.ctx, n + 1, t);
      const auto lower = stratum(population, f.ctx, n, t);
      CHECK(std::includes(lower.begin(), lower.end(), upper.begin(), upper.end()));
    }
    for (const PersonRecord& p : population) {
      CHECK(membership_level(p, f.ctx, t) ==
            oracle::membership_level_oracle(p, f.ctx.level5_communities,
                                            f.ctx.level6_communities, t));
    }
  }
}

TEST_CASE("assertion classification grants labels per the definitions") {
  Fixture f;
  f.sc.adherence["widely_held"] = {"hub", "rim"};
  f.sc.adherence["hub_only"] = {"hub"};
  f.sc.adherence["rim_only"] = {"rim"};
  f.sc.adherence["loose_only"] = {"loose"};

  const auto widely = classify_assertion("widely_held", f.sc, f.ctx);
  CHECK(widely.point_of_view);
  CHECK(widely.mainstream);
  CHECK(widely.shared);  // 2 of 2 level-5
  REQUIRE(widely.shared_mainstream.has_value());
  CHECK(*widely.shared_mainstream);

  const auto hub_only = classify_assertion("hub_only", f.sc, f.ctx);
  CHECK(hub_only.point_of_view);
  CHECK(hub_only.mainstream);
  CHECK_FALSE(hub_only.shared);  // 1 of 2 is not over 75%

  const auto rim_only = classify_assertion("rim_only", f.sc, f.ctx);
  CHECK(rim_only.point_of_view);
  CHECK_FALSE(rim_only.mainstream);

  // adherence by an unqualified community counts for nothing
  const auto loose_only = classify_assertion("loose_only", f.sc, f.ctx);
  CHECK_FALSE(loose_only.point_of_view);
  CHECK(loose_only.labels().empty());

  // unknown assertion: nobody adheres
  CHECK(classify_assertion("unknown", f.sc, f.ctx).labels().empty());
}

TEST_CASE("the shared quorum is strictly over 75 percent") {
  // 4 qualified communities: 3 adherents (75%) must NOT grant Shared;
  // 5 qualified communities: 4 adherents (80%) must grant it.
  Scenario sc;
  for (int i = 0; i < 5; ++i)
    sc.communities.push_back(
        {"com" + std::to_string(i), true, true, {"v"}});
  for (int i = 0; i < 4; ++i)
    sc.edges.emplace_back("com" + std::to_string(i), "com" + std::to_string(i + 1));
  sc.params.mainstream_threshold = 1.0;  // no mainstream communities at all

  SUBCASE("four communities, three adherents") {
    sc.communities.resize(4);
    sc.edges.resize(3);
    CommunityGraph g = CommunityGraph::build({"com0", "com1", "com2", "com3"},
                                             sc.edges, {});
    StrataContext ctx = make_strata_context(sc, g);
    sc.adherence["a"] = {"com0", "com1", "com2"};
    const auto got = classify_assertion("a", sc, ctx);
    CHECK_FALSE(got.shared);
    CHECK_FALSE(got.shared_mainstream.has_value());  // no level-6 pool
  }
  SUBCASE("five communities, four adherents") {
    CommunityGraph g = CommunityGraph::build(
        {"com0", "com1", "com2", "com3", "com4"}, sc.edges, {});
    StrataContext ctx = make_strata_context(sc, g);
    sc.adherence["a"] = {"com0", "com1", "com2", "com3"};
    CHECK(classify_assertion("a", sc, ctx).shared);
  }
}

TEST_CASE("shared implies point of view, shared mainstream implies mainstream") {
  Fixture f;
  SplitMix64 rng(555);
  const std::vector<std::string> all{"hub", "rim", "loose"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> adherents;
    for (const auto& c : all)
      if (rng.uniform_below(2) == 0) adherents.push_back(c);
    f.sc.adherence["a"] = adherents;
    const auto got = classify_assertion("a", f.sc, f.ctx);
    if (got.shared) CHECK(got.point_of_view);
    if (got.shared_mainstream && *got.shared_mainstream) CHECK(got.mainstream);
    if (got.mainstream) CHECK(got.point_of_view);
  }
}

TEST_CASE("endorsement classification mirrors the assertion rules") {
  Fixture f;
  f.sc.endorsement["sys_marginal"] = {"rim"};
  f.sc.endorsement["sys_broad"] = {"hub", "rim"};

  const auto marginal = classify_endorsement("sys_marginal", f.sc, f.ctx);
  CHECK(marginal.islamic);  // one qualified community suffices
  CHECK_FALSE(marginal.mainstream_islamic);
  CHECK(marginal.labels() == std::vector<std::string>{"Islamic"});

  const auto broad = classify_endorsement("sys_broad", f.sc, f.ctx);
  CHECK(broad.mainstream_islamic);
  CHECK(broad.shared);

  CHECK(classify_endorsement("unknown", f.sc, f.ctx).labels().empty());
}

TEST_CASE("classification without any qualified community is an error") {
  Scenario sc;
  sc.communities = {{"only", false, false, {}}};
  CommunityGraph g = CommunityGraph::build({"only"}, {}, {});
  StrataContext ctx = make_strata_context(sc, g);
  try {
    classify_assertion("a", sc, ctx);
    FAIL("expected NoCommunities");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCommunities);
  }
}
