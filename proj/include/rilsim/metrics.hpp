#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rilsim/query.hpp"
#include "rilsim/sim.hpp"

namespace rilsim {

// Exact fraction; denominators stay tiny here (set sizes), so int64 is ample.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

/// Jaccard distance between two sorted key sets: 1 - |A∩B| / |A∪B|;
/// 0 when both are empty.
Rational jaccard_distance(const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

/// Jaccard distance between the courts' live content triples
/// (modality, action, condition). Provenance does not count: a faithfully
/// gossiped copy is agreement.
Rational base_divergence(const Court& a, const Court& b);

/// Mean base_divergence over all unordered court pairs; 0 when fewer than
/// two courts. The parallel kernel fills a per-pair slot array and reduces
/// serially, so thread count never changes the result.
double mean_pairwise_divergence(const SimulationState& state, ExecMode mode);

/// Fraction of (court pair, probe) evaluations whose outcome differs when
/// decide is restricted to each court's own base.
double verdict_disagreement(const SimulationState& state,
                            const std::vector<ProbeSpec>& probes,
                            const PriorityPolicy& policy, ExecMode mode);

/// Fraction of probes referred to a court at the current state.
double referral_rate(const SimulationState& state,
                     const std::vector<ProbeSpec>& probes,
                     const PriorityPolicy& policy);

}  // namespace rilsim
