#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rilsim/json_io.hpp"
#include "rilsim/scenario.hpp"
#include "rilsim/sim.hpp"

namespace rilsim {

enum class ExperimentKind { Convergence, Workload, Perturbation };

std::string_view to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_kind_from_string(std::string_view s);

struct CsvRow {
  std::uint32_t round = 0;
  std::string metric;
  std::string value;  // preformatted, fixed %.12g
  std::string arm;
  std::uint64_t seed = 0;
};

// Regenerating a report from the same inputs reproduces identical bytes: rows
// are emitted in a pinned order and numbers are formatted once, at insertion.
struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::Convergence;
  std::vector<std::uint64_t> seeds;
  std::string config_digest;
  std::vector<CsvRow> rows;
  Json summary;

  std::string csv_text() const;
  std::string summary_text() const;
  /// `<kind>_seeds<first>-<last>_<digest>.{csv,json}`.
  std::string file_stem() const;
  /// Writes both files into `dir`; returns their paths.
  std::vector<std::string> write(const std::string& dir) const;
};

std::string format_metric(double value);

/// Convergence: per-round mean pairwise base divergence, gossip arm vs
/// no-gossip arm (import probability forced to zero), per seed.
/// Workload: final referral rate per seed against the all-refer baseline 1.0.
/// Perturbation: verdict-change fraction against the unperturbed run after
/// flipping the modality of the first k Forbidden/Permitted seed LPs, for
/// k in {0,1,2,4} and court counts {1, all}.
ExperimentReport run_experiment(ExperimentKind kind, const Scenario& scenario,
                                const std::vector<std::uint64_t>& seeds,
                                ExecMode mode);

}  // namespace rilsim
