#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "rilsim/rng.hpp"
#include "rilsim/scenario.hpp"
#include "rilsim/sim.hpp"

using namespace rilsim;

namespace {

std::shared_ptr<Scenario> reference_scenario() {
  static const Scenario cached =
      load_scenario(std::string(RILSIM_TEST_DATA_DIR) + "/reference_scenario.json");
  return std::make_shared<Scenario>(cached);
}

struct Collected {
  std::vector<CourtEvent> events;
  SimulationState state;
};

Collected run_collecting(std::shared_ptr<Scenario> sc, std::uint32_t rounds,
                         ExecMode mode, std::optional<std::uint64_t> seed = {}) {
  RunOptions options;
  options.rounds_override = rounds;
  options.mode = mode;
  if (seed) options.seed_override = *seed;
  std::vector<CourtEvent> all;
  options.on_round = [&](std::uint32_t, const std::vector<CourtEvent>& events) {
    all.insert(all.end(), events.begin(), events.end());
  };
  SimulationState state = run(std::move(sc), options);
  return {std::move(all), std::move(state)};
}

}  // namespace

TEST_CASE("a silent network produces nothing but advances the clock") {
  auto sc = reference_scenario();
  for (auto& court : sc->courts) court.activity_rate = 0.0;
  sc->params.import_probability = 0.0;
  sc->seed_lps.clear();

  auto [events, state] = run_collecting(std::make_shared<Scenario>(*sc), 10,
                                        ExecMode::Serial);
  CHECK(events.empty());
  CHECK(state.round == 10);
}

TEST_CASE("round zero carries exactly the seed announcements") {
  auto [events, state] =
      run_collecting(reference_scenario(), 0, ExecMode::Serial);
  CHECK(events.size() == reference_scenario()->seed_lps.size());
  for (const CourtEvent& ev : events) {
    CHECK(ev.round == 0);
    CHECK(ev.court_id == "seed");
    CHECK(ev.kind == EventKind::Issue);
  }
}

TEST_CASE("identical runs produce byte-identical event streams") {
  auto a = run_collecting(reference_scenario(), 60, ExecMode::Serial);
  auto b = run_collecting(reference_scenario(), 60, ExecMode::Serial);
  CHECK(events_to_jsonl(a.events) == events_to_jsonl(b.events));

  auto c = run_collecting(reference_scenario(), 60, ExecMode::Serial, 43);
  CHECK(events_to_jsonl(a.events) != events_to_jsonl(c.events));
}

TEST_CASE("the parallel engine is indistinguishable from the serial reference") {
  auto serial = run_collecting(reference_scenario(), 80, ExecMode::Serial);
  auto parallel = run_collecting(reference_scenario(), 80, ExecMode::Parallel);
  CHECK(events_to_jsonl(serial.events) == events_to_jsonl(parallel.events));
}

TEST_CASE("imports happen only on gossip rounds") {
  auto sc = reference_scenario();
  REQUIRE(sc->params.gossip_interval == 5);
  auto [events, state] = run_collecting(sc, 60, ExecMode::Serial);
  bool saw_import = false;
  for (const CourtEvent& ev : events) {
    if (ev.kind == EventKind::Import) {
      saw_import = true;
      CHECK(ev.round % 5 == 0);
    }
  }
  CHECK(saw_import);
}

TEST_CASE("events are ordered by (round, court, seq) and conserve counts") {
  auto [events, state] = run_collecting(reference_scenario(), 50, ExecMode::Serial);
  for (std::size_t i = 1; i < events.size(); ++i) {
    const auto& prev = events[i - 1];
    const auto& cur = events[i];
    const auto key_prev = std::tuple(prev.round, prev.court_id, prev.seq);
    const auto key_cur = std::tuple(cur.round, cur.court_id, cur.seq);
    CHECK(key_prev < key_cur);
  }

  // global log length = seed events + sum of per-court log lengths
  std::size_t court_events = 0;
  for (const Court& c : state.courts) court_events += c.log().size();
  CHECK(events.size() == state.seeds.size() + court_events);

  // publicity: every court-log event appears verbatim in the global stream
  std::set<std::string> global;
  for (const CourtEvent& ev : events)
    global.insert(events_to_jsonl({ev}));
  for (const Court& c : state.courts)
    for (const CourtEvent& ev : c.log())
      CHECK(global.contains(events_to_jsonl({ev})));
}

TEST_CASE("removing one court never changes another court's issuance") {
  auto full = run_collecting(reference_scenario(), 60, ExecMode::Serial);

  auto trimmed = reference_scenario();
  trimmed->courts.erase(
      std::remove_if(trimmed->courts.begin(), trimmed->courts.end(),
                     [](const CourtSpec& c) { return c.id == "c07"; }),
      trimmed->courts.end());
  auto rest = run_collecting(std::make_shared<Scenario>(*trimmed), 60,
                             ExecMode::Serial);

  auto issue_stream = [](const std::vector<CourtEvent>& events) {
    std::vector<std::string> out;
    for (const CourtEvent& ev : events)
      if (ev.kind == EventKind::Issue && ev.court_id != "seed" &&
          ev.court_id != "c07")
        out.push_back(std::to_string(ev.round) + "|" + ev.lp_id + "|" +
                      ev.payload->content_key());
    return out;
  };
  CHECK(issue_stream(full.events) == issue_stream(rest.events));
}

TEST_CASE("donor choice follows the weights") {
  // frequencies over 10000 seeded draws within +-3% of the 0.9/0.1 split
  const std::vector<double> weights{0.0, 0.9, 0.1};  // index 0 is the importer
  SplitMix64 rng(4242);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 10000; ++i)
    ++counts[weighted_choice_excluding(rng, weights, 0)];
  CHECK(counts[0] == 0);
  CHECK(counts[1] > 8700);
  CHECK(counts[1] < 9300);
  CHECK(counts[2] > 700);
  CHECK(counts[2] < 1300);
}

TEST_CASE("per-court substreams are keyed by id, not position") {
  const SplitMix64 a = substream(42, 7, "c03", kIssuePhase);
  SplitMix64 b = substream(42, 7, "c03", kIssuePhase);
  SplitMix64 c = substream(42, 7, "c04", kIssuePhase);
  SplitMix64 d = substream(42, 8, "c03", kIssuePhase);
  SplitMix64 e = substream(42, 7, "c03", kGossipPhase);
  SplitMix64 base = a;
  const auto first = base.next_u64();
  CHECK(first == b.next_u64());
  CHECK(first != c.next_u64());
  CHECK(first != d.next_u64());
  CHECK(first != e.next_u64());
}

TEST_CASE("state snapshots round-trip through json") {
  auto [events, state] = run_collecting(reference_scenario(), 40, ExecMode::Serial);
  const std::string snapshot = state_to_json(state, state.params.seed);
  SimulationState restored = state_from_json(snapshot);

  CHECK(restored.round == state.round);
  REQUIRE(restored.courts.size() == state.courts.size());
  for (std::size_t i = 0; i < state.courts.size(); ++i) {
    CHECK(restored.courts[i].id() == state.courts[i].id());
    CHECK(restored.courts[i].current_base() == state.courts[i].current_base());
  }
  CHECK(state_to_json(restored, state.params.seed) == snapshot);
}

TEST_CASE("mainstream communities follow the scenario threshold") {
  auto state = init_state(reference_scenario());
  // hub com0 (degree 3/3) and com3 (degree 2/3) clear theta = 0.5
  CHECK(mainstream_communities(state) == std::set<std::string>{"com0", "com3"});
}

TEST_CASE("seed LPs never enter court bases via gossip") {
  auto [events, state] = run_collecting(reference_scenario(), 80, ExecMode::Serial);
  for (const Court& c : state.courts)
    for (const auto& lp : c.current_base())
      CHECK(lp.id.find("seed:") == std::string::npos);
}
