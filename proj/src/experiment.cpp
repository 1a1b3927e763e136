#include "rilsim/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rilsim/errors.hpp"
#include "rilsim/metrics.hpp"
#include "rilsim/query.hpp"

namespace rilsim {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Convergence: return "Convergence";
    case ExperimentKind::Workload: return "Workload";
    case ExperimentKind::Perturbation: return "Perturbation";
  }
  return "?";
}

std::optional<ExperimentKind> experiment_kind_from_string(std::string_view s) {
  if (s == "Convergence") return ExperimentKind::Convergence;
  if (s == "Workload") return ExperimentKind::Workload;
  if (s == "Perturbation") return ExperimentKind::Perturbation;
  return std::nullopt;
}

std::string format_metric(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string ExperimentReport::csv_text() const {
  std::string out = "round,metric,value,arm,seed\n";
  for (const CsvRow& r : rows) {
    out += std::to_string(r.round);
    out += ',';
    out += r.metric;
    out += ',';
    out += r.value;
    out += ',';
    out += r.arm;
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string ExperimentReport::summary_text() const { return summary.dump(2) + "\n"; }

std::string ExperimentReport::file_stem() const {
  std::string stem = std::string(to_string(kind));
  stem += "_seeds";
  if (!seeds.empty()) {
    stem += std::to_string(seeds.front());
    if (seeds.size() > 1) stem += "-" + std::to_string(seeds.back());
  }
  stem += "_" + config_digest;
  return stem;
}

std::vector<std::string> ExperimentReport::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::string stem = (std::filesystem::path(dir) / file_stem()).string();
  std::vector<std::string> paths;
  for (const auto& [suffix, text] :
       {std::pair{".csv", csv_text()}, std::pair{".json", summary_text()}}) {
    const std::string path = stem + suffix;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write report file '" + path + "'");
    out << text;
    paths.push_back(path);
  }
  return paths;
}

namespace {

std::vector<Outcome> probe_outcomes(const SimulationState& state,
                                    const Scenario& scenario,
                                    const PriorityPolicy& policy) {
  std::vector<Outcome> out;
  out.reserve(scenario.probe_queries.size());
  for (const ProbeSpec& probe : scenario.probe_queries) {
    QueryContext qc = context_for_agent(state, probe.agent);
    out.push_back(decide(state, probe.action, probe.context, qc, policy).outcome);
  }
  return out;
}

ExperimentReport convergence_experiment(const Scenario& scenario,
                                        const std::vector<std::uint64_t>& seeds,
                                        ExecMode mode) {
  ExperimentReport report;
  Json per_seed = Json::array();
  std::size_t gossip_lower = 0;

  for (std::uint64_t seed : seeds) {
    struct Arm {
      const char* name;
      bool gossip;
      std::vector<double> series;
    };
    Arm arms[2] = {{"gossip", true, {}}, {"no_gossip", false, {}}};
    for (Arm& arm : arms) {
      Scenario variant = scenario;
      if (!arm.gossip) variant.params.import_probability = 0.0;
      RunOptions options;
      options.seed_override = seed;
      options.mode = mode;
      options.after_round = [&](const SimulationState& s) {
        arm.series.push_back(mean_pairwise_divergence(s, mode));
      };
      run(std::make_shared<Scenario>(variant), options);
      for (std::size_t r = 0; r < arm.series.size(); ++r) {
        report.rows.push_back(CsvRow{static_cast<std::uint32_t>(r),
                                     "mean_divergence",
                                     format_metric(arm.series[r]), arm.name, seed});
      }
    }
    const double final_gossip = arms[0].series.back();
    const double final_plain = arms[1].series.back();
    if (final_gossip < final_plain) ++gossip_lower;
    per_seed.push_back(Json{{"seed", seed},
                            {"final_divergence_gossip", final_gossip},
                            {"final_divergence_no_gossip", final_plain}});
  }

  report.summary["kind"] = "Convergence";
  report.summary["seeds"] = seeds;
  report.summary["config_digest"] = scenario.digest;
  report.summary["per_seed"] = std::move(per_seed);
  report.summary["seeds_with_gossip_strictly_lower"] = gossip_lower;
  return report;
}

ExperimentReport workload_experiment(const Scenario& scenario,
                                     const std::vector<std::uint64_t>& seeds,
                                     ExecMode mode) {
  ExperimentReport report;
  Json per_seed = Json::array();
  double worst = 0.0;

  for (std::uint64_t seed : seeds) {
    RunOptions options;
    options.seed_override = seed;
    options.mode = mode;
    SimulationState state = run(std::make_shared<Scenario>(scenario), options);
    const double rate =
        referral_rate(state, scenario.probe_queries, scenario.priority_policy);
    worst = std::max(worst, rate);
    report.rows.push_back(CsvRow{state.round, "referral_rate", format_metric(rate),
                                 "measured", seed});
    report.rows.push_back(
        CsvRow{state.round, "referral_rate", format_metric(1.0), "baseline", seed});
    per_seed.push_back(Json{{"seed", seed}, {"referral_rate", rate}});
  }

  report.summary["kind"] = "Workload";
  report.summary["seeds"] = seeds;
  report.summary["config_digest"] = scenario.digest;
  report.summary["baseline_all_refer"] = 1.0;
  report.summary["per_seed"] = std::move(per_seed);
  report.summary["max_referral_rate"] = worst;
  return report;
}

// Flips Forbidden <-> Permitted on the first k seed LPs that carry one of
// those modalities; Obligatory seeds have no defined flip and are skipped.
Scenario perturb_seeds(const Scenario& scenario, int k) {
  Scenario out = scenario;
  int flipped = 0;
  for (LegalProposition& lp : out.seed_lps) {
    if (flipped >= k) break;
    if (lp.modality == Modality::Forbidden) {
      lp.modality = Modality::Permitted;
      ++flipped;
    } else if (lp.modality == Modality::Permitted) {
      lp.modality = Modality::Forbidden;
      ++flipped;
    }
  }
  return out;
}

Scenario restrict_to_first_court(const Scenario& scenario) {
  Scenario out = scenario;
  if (!out.courts.empty()) out.courts.resize(1);
  return out;
}

ExperimentReport perturbation_experiment(const Scenario& scenario,
                                         const std::vector<std::uint64_t>& seeds,
                                         ExecMode mode) {
  static constexpr int kFlips[] = {0, 1, 2, 4};
  ExperimentReport report;
  Json table = Json::array();

  struct Variant {
    std::string name;
    Scenario scenario;
  };
  std::vector<Variant> variants;
  variants.push_back({"courts=1", restrict_to_first_court(scenario)});
  variants.push_back({"courts=" + std::to_string(scenario.courts.size()), scenario});

  for (const Variant& variant : variants) {
    for (std::uint64_t seed : seeds) {
      auto outcomes_for = [&](const Scenario& sc) {
        RunOptions options;
        options.seed_override = seed;
        options.mode = mode;
        SimulationState state = run(std::make_shared<Scenario>(sc), options);
        return probe_outcomes(state, sc, sc.priority_policy);
      };
      const std::vector<Outcome> baseline = outcomes_for(variant.scenario);
      for (int k : kFlips) {
        const std::vector<Outcome> perturbed =
            k == 0 ? baseline : outcomes_for(perturb_seeds(variant.scenario, k));
        std::size_t changed = 0;
        for (std::size_t q = 0; q < baseline.size(); ++q)
          if (perturbed[q] != baseline[q]) ++changed;
        const double fraction =
            baseline.empty() ? 0.0
                             : static_cast<double>(changed) /
                                   static_cast<double>(baseline.size());
        const std::string arm = variant.name + ";k=" + std::to_string(k);
        report.rows.push_back(CsvRow{scenario.params.rounds_total,
                                     "verdict_change_fraction",
                                     format_metric(fraction), arm, seed});
        table.push_back(Json{{"arm", arm},
                             {"seed", seed},
                             {"flipped_seeds", k},
                             {"verdict_change_fraction", fraction}});
      }
    }
  }

  report.summary["kind"] = "Perturbation";
  report.summary["seeds"] = seeds;
  report.summary["config_digest"] = scenario.digest;
  report.summary["table"] = std::move(table);
  report.summary["note"] =
      "directional hypothesis (distributed runs more stable) is reported, "
      "not asserted";
  return report;
}

}  // namespace

ExperimentReport run_experiment(ExperimentKind kind, const Scenario& scenario,
                                const std::vector<std::uint64_t>& seeds,
                                ExecMode mode) {
  if (seeds.empty())
    throw Error(ErrorCode::InvalidInput, "experiment needs at least one seed");
  ExperimentReport report;
  switch (kind) {
    case ExperimentKind::Convergence:
      report = convergence_experiment(scenario, seeds, mode);
      break;
    case ExperimentKind::Workload:
      report = workload_experiment(scenario, seeds, mode);
      break;
    case ExperimentKind::Perturbation:
      report = perturbation_experiment(scenario, seeds, mode);
      break;
  }
  report.kind = kind;
  report.seeds = seeds;
  report.config_digest = scenario.digest;
  return report;
}

}  // namespace rilsim
