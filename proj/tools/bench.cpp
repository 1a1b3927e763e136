// Benchmark comparing the serial reference engine against the OpenMP path on
// the three data-parallel hot spots: per-court issuance, the pairwise
// divergence kernel, and per-court probe evaluation. Both paths must agree
// bit-for-bit; the bench checks that while timing them.

#include <chrono>
#include <cstdio>
#include <memory>

#include "rilsim/metrics.hpp"
#include "rilsim/scenario.hpp"
#include "rilsim/sim.hpp"

using namespace rilsim;

namespace {

Scenario synthetic_scenario(std::size_t communities, std::size_t courts,
                            std::uint32_t rounds, double activity_rate) {
  Scenario sc;
  for (std::size_t i = 0; i < communities; ++i) {
    CommunitySpec c;
    char buf[24];
    std::snprintf(buf, sizeof buf, "com%04zu", i);
    c.id = buf;
    c.has_lineage = true;
    c.lineage_explanatory = true;
    c.viewpoint_package = {"v0"};
    sc.communities.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < communities; ++i)  // ring
    sc.edges.emplace_back(sc.communities[i].id,
                          sc.communities[(i + 1) % communities].id);
  for (std::size_t i = 0; i < courts; ++i) {
    CourtSpec c;
    char buf[24];
    std::snprintf(buf, sizeof buf, "c%05zu", i);
    c.id = buf;
    c.community = sc.communities[i % communities].id;
    c.revision_policy = i % 3 == 0 ? RevisionPolicy::KeepBoth
                        : i % 3 == 1 ? RevisionPolicy::WithdrawOlderConflicts
                                     : RevisionPolicy::WithdrawLowerPriority;
    c.activity_rate = activity_rate;
    sc.courts.push_back(std::move(c));
  }
  sc.agents.push_back({"agent0", sc.communities[0].id});
  sc.actions = {"act_a", "act_b", "act_c", "act_d", "act_e",
                "act_f", "act_g", "act_h", "act_i", "act_j"};
  sc.tags = {"night", "ramadan", "emergency", "minor", "public"};
  for (const std::string& action : sc.actions)
    sc.probe_queries.push_back({action, Condition::always(), "agent0"});
  sc.priority_policy = PriorityPolicy::defaults();
  sc.params.gossip_interval = 5;
  sc.params.import_probability = 0.2;
  sc.params.mainstream_threshold = 0.5;
  sc.params.rounds_total = rounds;
  sc.params.seed = 42;
  sc.digest = "synthetic";
  return sc;
}

template <typename F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main() {
  const Scenario sc = synthetic_scenario(64, 800, 100, 0.5);
  std::printf("bench scenario: %zu courts, %zu communities, %u rounds\n\n",
              sc.courts.size(), sc.communities.size(), sc.params.rounds_total);

  SimulationState serial_state = init_state(std::make_shared<Scenario>(sc));
  SimulationState parallel_state = init_state(std::make_shared<Scenario>(sc));

  std::string serial_log, parallel_log;
  const double t_sim_serial = time_seconds([&] {
    for (std::uint32_t r = 1; r <= sc.params.rounds_total; ++r)
      serial_log += events_to_jsonl(step(serial_state, ExecMode::Serial));
  });
  const double t_sim_parallel = time_seconds([&] {
    for (std::uint32_t r = 1; r <= sc.params.rounds_total; ++r)
      parallel_log += events_to_jsonl(step(parallel_state, ExecMode::Parallel));
  });
  const bool sim_match = serial_log == parallel_log;

  double div_serial = 0.0, div_parallel = 0.0;
  double t_div_serial = 0.0, t_div_parallel = 0.0;
  constexpr int kDivReps = 3;
  t_div_serial = time_seconds([&] {
    for (int i = 0; i < kDivReps; ++i)
      div_serial = mean_pairwise_divergence(serial_state, ExecMode::Serial);
  });
  t_div_parallel = time_seconds([&] {
    for (int i = 0; i < kDivReps; ++i)
      div_parallel = mean_pairwise_divergence(parallel_state, ExecMode::Parallel);
  });
  const bool div_match = div_serial == div_parallel;

  double dis_serial = 0.0, dis_parallel = 0.0;
  const double t_dis_serial = time_seconds([&] {
    dis_serial = verdict_disagreement(serial_state, sc.probe_queries,
                                      sc.priority_policy, ExecMode::Serial);
  });
  const double t_dis_parallel = time_seconds([&] {
    dis_parallel = verdict_disagreement(parallel_state, sc.probe_queries,
                                        sc.priority_policy, ExecMode::Parallel);
  });
  const bool dis_match = dis_serial == dis_parallel;

  std::printf("%-22s %10s %10s %8s %s\n", "kernel", "serial[s]", "openmp[s]",
              "speedup", "identical");
  auto row = [](const char* name, double ts, double tp, bool match) {
    std::printf("%-22s %10.3f %10.3f %8.2fx %s\n", name, ts, tp,
                tp > 0 ? ts / tp : 0.0, match ? "yes" : "NO");
  };
  row("simulate (issuance)", t_sim_serial, t_sim_parallel, sim_match);
  row("pairwise divergence", t_div_serial, t_div_parallel, div_match);
  row("probe disagreement", t_dis_serial, t_dis_parallel, dis_match);

  std::printf("\nmean divergence %.6f, probe disagreement %.6f\n", div_serial,
              dis_serial);
  std::printf("(speedups depend on the cores actually available; the identity "
              "column is the contract)\n");
  return sim_match && div_match && dis_match ? 0 : 1;
}
