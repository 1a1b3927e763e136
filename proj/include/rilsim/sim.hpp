#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rilsim/court.hpp"
#include "rilsim/graph.hpp"
#include "rilsim/rng.hpp"
#include "rilsim/scenario.hpp"

namespace rilsim {

enum class ExecMode { Serial, Parallel };

// State of one run. Round 0 holds the seed-LP announcements; each step then
// executes exactly one round.
struct SimulationState {
  std::uint32_t round = 0;
  std::vector<Court> courts;  // ascending court-id order
  CommunityGraph graph;
  std::map<std::string, double> centrality;  // community -> score
  SimulationParams params;
  std::vector<LegalProposition> seeds;
  std::shared_ptr<const Scenario> scenario;

  const Court* find_court(std::string_view id) const;
};

/// Builds round-0 state. `seed_events` receives one Issue record per seed LP
/// (court_id "seed"), which is what an events log starts with.
SimulationState init_state(std::shared_ptr<const Scenario> scenario,
                           std::vector<CourtEvent>* seed_events = nullptr);

/// Communities whose centrality strictly exceeds the scenario threshold.
std::set<std::string> mainstream_communities(const SimulationState& state);

/// Executes one round and returns its events ordered by (court_id, seq).
/// Phase 1: every court, with probability activity_rate, issues one LP drawn
/// from the scenario vocabulary. Phase 2 (on rounds divisible by
/// gossip_interval): every court, with probability import_probability, picks
/// a donor court weighted by the donor community's centrality and imports one
/// uniformly chosen LP from the donor's end-of-phase-1 base.
///
/// Serial and Parallel modes produce identical results: randomness comes from
/// per-(seed, round, court, phase) substreams and phase-1 courts are mutually
/// independent, so the parallel loop only changes who executes which court.
std::vector<CourtEvent> step(SimulationState& state, ExecMode mode);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<std::uint32_t> rounds_override;
  ExecMode mode = ExecMode::Serial;
  /// Called once for round 0 (seed events) and once per executed round.
  std::function<void(std::uint32_t round, const std::vector<CourtEvent>&)> on_round;
  /// Called after each executed round with the updated state.
  std::function<void(const SimulationState&)> after_round;
};

/// Runs rounds 1..rounds_total. A fixed (scenario, seed, rounds) triple
/// yields a byte-identical event stream.
SimulationState run(std::shared_ptr<const Scenario> scenario, const RunOptions& options);

/// One event per line, ordered by (round, court_id, seq).
std::string events_to_jsonl(const std::vector<CourtEvent>& events);

/// Index drawn with probability weight[i] / sum(weights), the excluded index
/// never. Used for centrality-proportional donor selection. Weights must be
/// nonnegative with a positive sum over the non-excluded entries.
std::size_t weighted_choice_excluding(SplitMix64& rng,
                                      std::span<const double> weights,
                                      std::size_t excluded);

struct StateSnapshot {
  std::string scenario_digest;
  std::uint64_t seed = 0;
  std::uint32_t round = 0;
};

std::string state_to_json(const SimulationState& state, std::uint64_t effective_seed);
SimulationState state_from_json(const std::string& json_text);

}  // namespace rilsim
