#include "rilsim/metrics.hpp"

#include <algorithm>

#include "rilsim/errors.hpp"

namespace rilsim {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational jaccard_distance(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  std::int64_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::int64_t uni =
      static_cast<std::int64_t>(a.size() + b.size()) - inter;
  if (uni == 0) return Rational(0, 1);  // both empty
  return Rational(uni - inter, uni);
}

Rational base_divergence(const Court& a, const Court& b) {
  return jaccard_distance(a.content_keys(), b.content_keys());
}

double mean_pairwise_divergence(const SimulationState& state, ExecMode mode) {
  const std::size_t n = state.courts.size();
  if (n < 2) return 0.0;
  const std::size_t pairs = n * (n - 1) / 2;

  std::vector<std::vector<std::string>> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = state.courts[i].content_keys();

  std::vector<double> slot(pairs);
  auto pair_value = [&](std::size_t p) {
    // flat pair index -> (i, j), row by row
    std::size_t i = 0, before = 0;
    while (before + (n - 1 - i) <= p) {
      before += n - 1 - i;
      ++i;
    }
    const std::size_t j = i + 1 + (p - before);
    slot[p] = jaccard_distance(keys[i], keys[j]).to_double();
  };

  const auto m = static_cast<std::ptrdiff_t>(pairs);
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < m; ++p) pair_value(static_cast<std::size_t>(p));
  } else {
    for (std::ptrdiff_t p = 0; p < m; ++p) pair_value(static_cast<std::size_t>(p));
  }

  double sum = 0.0;  // serial ordered reduction
  for (double v : slot) sum += v;
  return sum / static_cast<double>(pairs);
}

double verdict_disagreement(const SimulationState& state,
                            const std::vector<ProbeSpec>& probes,
                            const PriorityPolicy& policy, ExecMode mode) {
  if (probes.empty())
    throw Error(ErrorCode::InvalidInput, "probe set must be nonempty");
  const std::size_t n = state.courts.size();
  if (n < 2) return 0.0;

  // Per-court outcomes per probe, computed once.
  std::vector<std::vector<Outcome>> outcomes(n, std::vector<Outcome>(probes.size()));
  auto court_outcomes = [&](std::size_t i) {
    const std::vector<LegalProposition> pool = state.courts[i].current_base();
    for (std::size_t q = 0; q < probes.size(); ++q) {
      const ProbeSpec& probe = probes[q];
      QueryContext qc = context_for_agent(state, probe.agent);
      outcomes[i][q] =
          decide_on_pool(pool, probe.action, probe.context, qc, policy, &state)
              .outcome;
    }
  };
  const auto courts_n = static_cast<std::ptrdiff_t>(n);
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < courts_n; ++i)
      court_outcomes(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < courts_n; ++i)
      court_outcomes(static_cast<std::size_t>(i));
  }

  std::size_t mismatches = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t q = 0; q < probes.size(); ++q) {
        if (outcomes[i][q] != outcomes[j][q]) ++mismatches;
        ++total;
      }
    }
  }
  return static_cast<double>(mismatches) / static_cast<double>(total);
}

double referral_rate(const SimulationState& state,
                     const std::vector<ProbeSpec>& probes,
                     const PriorityPolicy& policy) {
  if (probes.empty()) return 0.0;
  std::size_t referred = 0;
  for (const ProbeSpec& probe : probes) {
    QueryContext qc = context_for_agent(state, probe.agent);
    const Verdict v = decide(state, probe.action, probe.context, qc, policy);
    if (referral_needed(v)) ++referred;
  }
  return static_cast<double>(referred) / static_cast<double>(probes.size());
}

}  // namespace rilsim
