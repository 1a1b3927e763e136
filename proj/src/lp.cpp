#include "rilsim/lp.hpp"

#include <algorithm>

#include "rilsim/errors.hpp"

namespace rilsim {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Condition Condition::from_literals(std::vector<Literal> literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].tag == literals[i - 1].tag) {
      throw Error(ErrorCode::InvalidInput,
                  "condition is unsatisfiable: tag '" + literals[i].tag +
                      "' appears with both polarities");
    }
  }
  Condition c;
  c.literals_ = std::move(literals);
  return c;
}

std::optional<bool> Condition::polarity_of(std::string_view tag) const {
  auto it = std::lower_bound(
      literals_.begin(), literals_.end(), tag,
      [](const Literal& l, std::string_view t) { return l.tag < t; });
  if (it == literals_.end() || it->tag != tag) return std::nullopt;
  return it->positive;
}

bool conditions_overlap(const Condition& c1, const Condition& c2) {
  // Both literal lists are sorted with unique tags; the conjunction is
  // unsatisfiable exactly when some shared tag carries opposite polarities.
  auto a = c1.literals().begin(), a_end = c1.literals().end();
  auto b = c2.literals().begin(), b_end = c2.literals().end();
  while (a != a_end && b != b_end) {
    if (a->tag < b->tag) {
      ++a;
    } else if (b->tag < a->tag) {
      ++b;
    } else {
      if (a->positive != b->positive) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

std::vector<std::string> EvidenceProfile::validate() const {
  std::vector<std::string> problems;
  if (tier == SourceTier::DirectWitness && witness_chain_length != 0)
    problems.push_back("DirectWitness requires witness_chain_length = 0");
  if (tier == SourceTier::IndirectWitness && witness_chain_length < 1)
    problems.push_back("IndirectWitness requires witness_chain_length >= 1");
  if ((tier == SourceTier::CourtJudgement) != issuing_court.has_value())
    problems.push_back(
        "issuing_court must be present exactly when tier is CourtJudgement");
  if (scholar_rank < 0 || scholar_rank > 10)
    problems.push_back("scholar_rank must be in 0..10");
  return problems;
}

std::string LegalProposition::content_key() const {
  std::string key;
  key.reserve(action.size() + 16);
  key += to_string(modality);
  key += '|';
  key += action;
  key += '|';
  for (const Literal& l : condition.literals()) {
    key += l.tag;
    key += l.positive ? '+' : '-';
    key += ';';
  }
  return key;
}

namespace {

bool modalities_incompatible(Modality a, Modality b) {
  if (a == b) return false;
  const bool forbidden_involved = a == Modality::Forbidden || b == Modality::Forbidden;
  return forbidden_involved;  // {F,P} and {F,O} clash; {O,P} is compatible
}

}  // namespace

bool conflicts(const LegalProposition& a, const LegalProposition& b) {
  return a.action == b.action && modalities_incompatible(a.modality, b.modality) &&
         conditions_overlap(a.condition, b.condition);
}

bool applicable(const LegalProposition& lp, std::string_view action,
                const Condition& context) {
  if (lp.action != action) return false;
  for (const Literal& l : lp.condition.literals()) {
    auto pol = context.polarity_of(l.tag);
    if (!pol || *pol != l.positive) return false;
  }
  return true;
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::Obligatory: return "Obligatory";
    case Modality::Permitted: return "Permitted";
    case Modality::Forbidden: return "Forbidden";
  }
  return "?";
}

std::string_view to_string(SourceTier t) {
  switch (t) {
    case SourceTier::Science: return "Science";
    case SourceTier::ConfirmedInterpretation: return "ConfirmedInterpretation";
    case SourceTier::DirectWitness: return "DirectWitness";
    case SourceTier::IndirectWitness: return "IndirectWitness";
    case SourceTier::Revelation: return "Revelation";
    case SourceTier::CourtJudgement: return "CourtJudgement";
  }
  return "?";
}

std::optional<Modality> modality_from_string(std::string_view s) {
  if (s == "Obligatory") return Modality::Obligatory;
  if (s == "Permitted") return Modality::Permitted;
  if (s == "Forbidden") return Modality::Forbidden;
  return std::nullopt;
}

std::optional<SourceTier> tier_from_string(std::string_view s) {
  if (s == "Science") return SourceTier::Science;
  if (s == "ConfirmedInterpretation") return SourceTier::ConfirmedInterpretation;
  if (s == "DirectWitness") return SourceTier::DirectWitness;
  if (s == "IndirectWitness") return SourceTier::IndirectWitness;
  if (s == "Revelation") return SourceTier::Revelation;
  if (s == "CourtJudgement") return SourceTier::CourtJudgement;
  return std::nullopt;
}

}  // namespace rilsim
