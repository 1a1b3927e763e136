#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rilsim {

enum class Modality { Obligatory, Permitted, Forbidden };

enum class SourceTier {
  Science,
  ConfirmedInterpretation,
  DirectWitness,
  IndirectWitness,
  Revelation,
  CourtJudgement,
};

inline constexpr int kSourceTierCount = 6;

/// Lowercase token: [a-z][a-z0-9_]*.
bool is_identifier(std::string_view s);

struct Literal {
  std::string tag;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
};

// A conjunctive guard over a flat tag vocabulary. Literals are kept sorted by
// tag and deduplicated; a tag carrying both polarities is unsatisfiable and is
// rejected at construction.
class Condition {
 public:
  Condition() = default;

  static Condition always() { return Condition{}; }
  /// Throws Error(InvalidInput) when a tag appears with both polarities.
  static Condition from_literals(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::optional<bool> polarity_of(std::string_view tag) const;

  auto operator<=>(const Condition&) const = default;

 private:
  std::vector<Literal> literals_;  // sorted by tag, unique tags
};

/// True iff the conjunction of the two guards is satisfiable.
bool conditions_overlap(const Condition& c1, const Condition& c2);

struct EvidenceProfile {
  SourceTier tier = SourceTier::Revelation;
  std::uint32_t science_version = 0;
  std::uint32_t witness_chain_length = 0;
  int scholar_rank = 0;  // 0..10
  bool scholar_involved = false;
  std::optional<std::string> issuing_court;
  std::uint32_t issue_time = 0;

  bool operator==(const EvidenceProfile&) const = default;

  /// Structural invariants; empty result means valid.
  std::vector<std::string> validate() const;
};

struct LegalProposition {
  std::string id;
  Modality modality = Modality::Permitted;
  std::string action;
  Condition condition;
  EvidenceProfile evidence;
  std::optional<std::uint32_t> withdrawn_at;

  /// Canonical "modality|action|literals" key; gossip dedup and divergence
  /// compare positions by this, not by id or provenance.
  std::string content_key() const;

  bool operator==(const LegalProposition&) const = default;
};

/// Same action, overlapping guards, incompatible modalities. Incompatible
/// pairs are {Forbidden,Permitted} and {Forbidden,Obligatory}; Obligatory
/// entails Permitted, so that pair is compatible. Symmetric, irreflexive.
bool conflicts(const LegalProposition& a, const LegalProposition& b);

/// True iff lp speaks about `action` and every literal of its guard is
/// present in `context` (missing tags count as non-matching).
bool applicable(const LegalProposition& lp, std::string_view action,
                const Condition& context);

std::string_view to_string(Modality m);
std::string_view to_string(SourceTier t);
std::optional<Modality> modality_from_string(std::string_view s);
std::optional<SourceTier> tier_from_string(std::string_view s);

}  // namespace rilsim
