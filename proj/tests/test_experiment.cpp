#include <doctest.h>

#include <fstream>

#include "rilsim/experiment.hpp"
#include "rilsim/scenario.hpp"

using namespace rilsim;

namespace {

Scenario reference_scenario(std::uint32_t rounds) {
  Scenario sc =
      load_scenario(std::string(RILSIM_TEST_DATA_DIR) + "/reference_scenario.json");
  sc.params.rounds_total = rounds;
  return sc;
}

double csv_value(const CsvRow& row) { return std::stod(row.value); }

}  // namespace

TEST_CASE("convergence arms coincide when gossip is disabled in the scenario") {
  Scenario sc = reference_scenario(20);
  sc.params.import_probability = 0.0;
  const auto report =
      run_experiment(ExperimentKind::Convergence, sc, {42}, ExecMode::Serial);

  std::map<std::uint32_t, double> gossip_arm, plain_arm;
  for (const CsvRow& row : report.rows) {
    if (row.arm == "gossip") gossip_arm[row.round] = csv_value(row);
    if (row.arm == "no_gossip") plain_arm[row.round] = csv_value(row);
  }
  REQUIRE(gossip_arm.size() == 21);  // rounds 0..20
  CHECK(gossip_arm == plain_arm);
}

TEST_CASE("convergence report shape: rows per arm, seed, and round") {
  const Scenario sc = reference_scenario(10);
  const auto report =
      run_experiment(ExperimentKind::Convergence, sc, {42, 43}, ExecMode::Serial);
  CHECK(report.rows.size() == 2 * 2 * 11);
  CHECK(report.summary["seeds_with_gossip_strictly_lower"].is_number());
}

TEST_CASE("workload report contrasts the measured rate with the all-refer baseline") {
  const Scenario sc = reference_scenario(15);
  const auto report =
      run_experiment(ExperimentKind::Workload, sc, {42}, ExecMode::Serial);
  CHECK(report.summary["baseline_all_refer"] == 1.0);

  bool has_baseline_row = false, has_measured_row = false;
  for (const CsvRow& row : report.rows) {
    if (row.arm == "baseline") {
      has_baseline_row = true;
      CHECK(csv_value(row) == 1.0);
    }
    if (row.arm == "measured") {
      has_measured_row = true;
      CHECK(csv_value(row) <= 1.0);
    }
  }
  CHECK(has_baseline_row);
  CHECK(has_measured_row);
}

TEST_CASE("workload on an empty seed base still reports against the baseline") {
  Scenario sc = reference_scenario(5);
  sc.seed_lps.clear();
  for (auto& court : sc.courts) court.activity_rate = 0.0;
  const auto report =
      run_experiment(ExperimentKind::Workload, sc, {42}, ExecMode::Serial);
  CHECK(report.summary["max_referral_rate"] == 1.0);  // everything refers
}

TEST_CASE("perturbation rows cover both court counts and k=0 is exactly zero") {
  const Scenario sc = reference_scenario(12);
  const auto report =
      run_experiment(ExperimentKind::Perturbation, sc, {42}, ExecMode::Serial);

  std::set<std::string> arms;
  for (const CsvRow& row : report.rows) {
    arms.insert(row.arm);
    if (row.arm.find("k=0") != std::string::npos) CHECK(csv_value(row) == 0.0);
  }
  CHECK(arms.contains("courts=1;k=0"));
  CHECK(arms.contains("courts=1;k=4"));
  CHECK(arms.contains("courts=20;k=0"));
  CHECK(arms.contains("courts=20;k=4"));
  CHECK(report.rows.size() == 2 * 4);  // two court counts, four k values, one seed
}

TEST_CASE("reports regenerate byte-identically and embed digest and seeds") {
  const Scenario sc = reference_scenario(8);
  const auto a = run_experiment(ExperimentKind::Convergence, sc, {42, 43},
                                ExecMode::Serial);
  const auto b = run_experiment(ExperimentKind::Convergence, sc, {42, 43},
                                ExecMode::Serial);
  CHECK(a.csv_text() == b.csv_text());
  CHECK(a.summary_text() == b.summary_text());
  CHECK(a.file_stem().find(sc.digest) != std::string::npos);
  CHECK(a.file_stem().find("seeds42-43") != std::string::npos);
  CHECK(a.csv_text().starts_with("round,metric,value,arm,seed\n"));
}

TEST_CASE("experiments require at least one seed") {
  const Scenario sc = reference_scenario(5);
  CHECK_THROWS(run_experiment(ExperimentKind::Workload, sc, {}, ExecMode::Serial));
}
