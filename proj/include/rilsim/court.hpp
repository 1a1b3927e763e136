#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rilsim/lp.hpp"
#include "rilsim/priority.hpp"

namespace rilsim {

enum class EventKind { Issue, Withdraw, Import };

enum class EventReason {
  NewJudgement,
  ChangedViewpoint,
  NewDilemma,
  ConsistencyImprovement,
  GossipImport,
};

enum class RevisionPolicy { KeepBoth, WithdrawOlderConflicts, WithdrawLowerPriority };

std::string_view to_string(EventKind k);
std::string_view to_string(EventReason r);
std::string_view to_string(RevisionPolicy p);
std::optional<EventKind> event_kind_from_string(std::string_view s);
std::optional<EventReason> event_reason_from_string(std::string_view s);
std::optional<RevisionPolicy> revision_policy_from_string(std::string_view s);

struct CourtEvent {
  EventKind kind = EventKind::Issue;
  std::string lp_id;
  std::uint32_t round = 0;
  EventReason reason = EventReason::NewJudgement;
  std::optional<LegalProposition> payload;  // full LP for Issue/Import
  std::uint32_t seq = 0;                    // per-court position, log order
  std::string court_id;

  bool operator==(const CourtEvent&) const = default;
};

/// Graph and policy a court consults when revising under
/// WithdrawLowerPriority; unused by the other policies.
struct RevisionContext {
  const CommunityGraph* graph = nullptr;
  const PriorityPolicy* policy = nullptr;
};

// A court is a single-writer, event-sourced state machine. The log is
// append-only and replaying it reconstructs the current base exactly; the
// in-memory base and content counts are caches over the log.
class Court {
 public:
  Court(std::string id, std::string community, RevisionPolicy revision_policy,
        double activity_rate);

  const std::string& id() const { return id_; }
  const std::string& community() const { return community_; }
  RevisionPolicy revision_policy() const { return revision_policy_; }
  double activity_rate() const { return activity_rate_; }
  std::uint32_t next_lp_seq() const { return lp_seq_; }

  const std::vector<CourtEvent>& log() const { return log_; }

  /// Live LPs (issued/imported, not withdrawn), ordered by id.
  std::vector<LegalProposition> current_base() const;
  const std::map<std::string, LegalProposition>& base() const { return base_; }
  std::size_t base_size() const { return base_.size(); }

  /// Distinct live content keys, sorted. Duplicated content (a court may
  /// re-issue a position it already holds) collapses to one key.
  std::vector<std::string> content_keys() const;

  bool holds_content(const std::string& content_key) const;

  /// Appends one Issue event with a fresh `<court>:<seq>` id, then applies
  /// the revision policy. Returns every event appended, in order. The
  /// profile must carry issuing_court = this court and issue_time = round.
  std::vector<CourtEvent> issue(Modality modality, std::string action,
                                Condition condition, EvidenceProfile evidence,
                                std::uint32_t round, EventReason reason,
                                const RevisionContext& ctx);

  /// Throws Error(NotInBase) when lp_id is absent or already withdrawn.
  CourtEvent withdraw(const std::string& lp_id, std::uint32_t round,
                      EventReason reason);

  /// No-op (empty result) when an LP with the same content triple is already
  /// held; otherwise appends an Import preserving the donor's id and
  /// evidence, then applies the revision policy.
  std::vector<CourtEvent> import_lp(const LegalProposition& donor_lp,
                                    std::uint32_t round, const RevisionContext& ctx);

  /// Rebuilds a court from a persisted log, validating well-formedness
  /// (withdrawals must target an earlier, live Issue/Import).
  static Court replay(std::string id, std::string community,
                      RevisionPolicy revision_policy, double activity_rate,
                      std::span<const CourtEvent> events);

  /// The live base as of the end of `round` (log replay, seeds excluded).
  std::vector<LegalProposition> base_as_of(std::uint32_t round) const;

 private:
  std::vector<CourtEvent> revise(const LegalProposition& new_lp,
                                 std::uint32_t round, const RevisionContext& ctx);
  void apply(const CourtEvent& event);
  CourtEvent& append(CourtEvent event);

  std::string id_;
  std::string community_;
  RevisionPolicy revision_policy_;
  double activity_rate_;
  std::uint32_t lp_seq_ = 0;
  std::uint32_t event_seq_ = 0;
  std::vector<CourtEvent> log_;
  std::map<std::string, LegalProposition> base_;  // id -> live LP
  std::map<std::string, int> content_counts_;    // live content multiplicity
};

}  // namespace rilsim
