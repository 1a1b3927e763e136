#include "rilsim/priority.hpp"

#include <algorithm>
#include <array>

#include "rilsim/errors.hpp"

namespace rilsim {

std::string_view to_string(Mechanism m) {
  static constexpr std::array<std::string_view, 8> names = {
      "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"};
  return names[static_cast<int>(m)];
}

std::optional<Mechanism> mechanism_from_string(std::string_view s) {
  if (s.size() == 2 && s[0] == 'M' && s[1] >= '1' && s[1] <= '8')
    return static_cast<Mechanism>(s[1] - '1');
  return std::nullopt;
}

PriorityPolicy PriorityPolicy::defaults() {
  PriorityPolicy p;
  p.mechanism_order = {Mechanism::M1, Mechanism::M3, Mechanism::M4, Mechanism::M2,
                       Mechanism::M5, Mechanism::M6, Mechanism::M7, Mechanism::M8};
  p.tier_order = {{SourceTier::Science},
                  {SourceTier::ConfirmedInterpretation},
                  {SourceTier::DirectWitness},
                  {SourceTier::IndirectWitness},
                  {SourceTier::Revelation, SourceTier::CourtJudgement}};
  return p;
}

std::vector<std::string> PriorityPolicy::validate() const {
  std::vector<std::string> problems;

  std::array<int, kMechanismCount> mech_seen{};
  for (Mechanism m : mechanism_order) ++mech_seen[static_cast<int>(m)];
  const bool mech_ok =
      mechanism_order.size() == kMechanismCount &&
      std::all_of(mech_seen.begin(), mech_seen.end(), [](int c) { return c == 1; });
  if (!mech_ok)
    problems.push_back("mechanism_order is not a permutation of the 8 mechanisms");

  std::array<int, kSourceTierCount> tier_seen{};
  for (const auto& group : tier_order)
    for (SourceTier t : group) ++tier_seen[static_cast<int>(t)];
  const bool tiers_ok = std::all_of(tier_seen.begin(), tier_seen.end(),
                                    [](int c) { return c == 1; });
  if (!tiers_ok) {
    problems.push_back("tier_order is not a permutation of the 6 source tiers");
    return problems;  // rank lookups below would be meaningless
  }

  auto rank = [this](SourceTier t) { return tier_rank(t); };
  if (rank(SourceTier::Science) >= rank(SourceTier::Revelation))
    problems.push_back("tier_order violates M1: Science must rank above Revelation");
  if (rank(SourceTier::ConfirmedInterpretation) >= rank(SourceTier::Revelation))
    problems.push_back(
        "tier_order violates M3: ConfirmedInterpretation must rank above Revelation");
  if (rank(SourceTier::DirectWitness) >= rank(SourceTier::IndirectWitness))
    problems.push_back(
        "tier_order violates M4: DirectWitness must rank above IndirectWitness");
  return problems;
}

int PriorityPolicy::tier_rank(SourceTier tier) const {
  for (std::size_t g = 0; g < tier_order.size(); ++g)
    for (SourceTier t : tier_order[g])
      if (t == tier) return static_cast<int>(g);
  throw Error(ErrorCode::InvalidPolicy,
              "tier_order does not include tier " + std::string(to_string(tier)));
}

void validate_policy(const PriorityPolicy& policy) {
  auto problems = policy.validate();
  if (!problems.empty()) throw Error(ErrorCode::InvalidPolicy, problems.front());
}

namespace {

// +1: a precedes, -1: b precedes, 0: this mechanism has no opinion.
int sign_of(long long delta) { return delta > 0 ? 1 : delta < 0 ? -1 : 0; }

int evaluate_mechanism(Mechanism m, const LegalProposition& a,
                       const LegalProposition& b, const QueryContext& qc,
                       const PriorityPolicy& policy) {
  const EvidenceProfile& ea = a.evidence;
  const EvidenceProfile& eb = b.evidence;
  switch (m) {
    case Mechanism::M1:
    case Mechanism::M3:
    case Mechanism::M4:
      // The tier ranking already encodes all three source-order constraints.
      return sign_of(policy.tier_rank(eb.tier) - policy.tier_rank(ea.tier));
    case Mechanism::M2:
      if (ea.tier != SourceTier::Science || eb.tier != SourceTier::Science) return 0;
      return sign_of(static_cast<long long>(ea.science_version) -
                     static_cast<long long>(eb.science_version));
    case Mechanism::M5:
      return sign_of(ea.scholar_rank - eb.scholar_rank);
    case Mechanism::M6:
      return sign_of(static_cast<int>(ea.scholar_involved) -
                     static_cast<int>(eb.scholar_involved));
    case Mechanism::M7:
      // Recency counts within one court only; cross-court (and seed) pairs
      // are out of this mechanism's reach.
      if (!ea.issuing_court || !eb.issuing_court ||
          *ea.issuing_court != *eb.issuing_court)
        return 0;
      return sign_of(static_cast<long long>(ea.issue_time) -
                     static_cast<long long>(eb.issue_time));
    case Mechanism::M8: {
      const int beyond = qc.graph->diameter() + 1;  // seed LPs have no court
      auto dist = [&](const EvidenceProfile& e) {
        if (!e.issuing_court) return beyond;
        auto community = qc.graph->community_of_court(*e.issuing_court);
        return community ? qc.graph->distance(qc.agent_community, *community)
                         : beyond;
      };
      return sign_of(dist(eb) - dist(ea));  // smaller distance wins
    }
  }
  return 0;
}

}  // namespace

Ordering compare(const LegalProposition& a, const LegalProposition& b,
                 const QueryContext& qc, const PriorityPolicy& policy) {
  for (Mechanism m : policy.mechanism_order) {
    const int s = evaluate_mechanism(m, a, b, qc, policy);
    if (s > 0) return Ordering::APrecedes;
    if (s < 0) return Ordering::BPrecedes;
  }
  return Ordering::Tie;
}

std::vector<LegalProposition> maximal_set(std::span<const LegalProposition> lps,
                                          const QueryContext& qc,
                                          const PriorityPolicy& policy) {
  std::vector<LegalProposition> out;
  for (const LegalProposition& x : lps) {
    const bool dominated =
        std::any_of(lps.begin(), lps.end(), [&](const LegalProposition& y) {
          return compare(y, x, qc, policy) == Ordering::APrecedes;
        });
    if (!dominated) out.push_back(x);
  }
  std::sort(out.begin(), out.end(),
            [](const LegalProposition& l, const LegalProposition& r) {
              return l.id < r.id;
            });
  return out;
}

}  // namespace rilsim
