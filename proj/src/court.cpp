#include "rilsim/court.hpp"

#include <algorithm>

#include "rilsim/errors.hpp"

namespace rilsim {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Issue: return "Issue";
    case EventKind::Withdraw: return "Withdraw";
    case EventKind::Import: return "Import";
  }
  return "?";
}

std::string_view to_string(EventReason r) {
  switch (r) {
    case EventReason::NewJudgement: return "NewJudgement";
    case EventReason::ChangedViewpoint: return "ChangedViewpoint";
    case EventReason::NewDilemma: return "NewDilemma";
    case EventReason::ConsistencyImprovement: return "ConsistencyImprovement";
    case EventReason::GossipImport: return "GossipImport";
  }
  return "?";
}

std::string_view to_string(RevisionPolicy p) {
  switch (p) {
    case RevisionPolicy::KeepBoth: return "KeepBoth";
    case RevisionPolicy::WithdrawOlderConflicts: return "WithdrawOlderConflicts";
    case RevisionPolicy::WithdrawLowerPriority: return "WithdrawLowerPriority";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) {
  if (s == "Issue") return EventKind::Issue;
  if (s == "Withdraw") return EventKind::Withdraw;
  if (s == "Import") return EventKind::Import;
  return std::nullopt;
}

std::optional<EventReason> event_reason_from_string(std::string_view s) {
  if (s == "NewJudgement") return EventReason::NewJudgement;
  if (s == "ChangedViewpoint") return EventReason::ChangedViewpoint;
  if (s == "NewDilemma") return EventReason::NewDilemma;
  if (s == "ConsistencyImprovement") return EventReason::ConsistencyImprovement;
  if (s == "GossipImport") return EventReason::GossipImport;
  return std::nullopt;
}

std::optional<RevisionPolicy> revision_policy_from_string(std::string_view s) {
  if (s == "KeepBoth") return RevisionPolicy::KeepBoth;
  if (s == "WithdrawOlderConflicts") return RevisionPolicy::WithdrawOlderConflicts;
  if (s == "WithdrawLowerPriority") return RevisionPolicy::WithdrawLowerPriority;
  return std::nullopt;
}

Court::Court(std::string id, std::string community, RevisionPolicy revision_policy,
             double activity_rate)
    : id_(std::move(id)),
      community_(std::move(community)),
      revision_policy_(revision_policy),
      activity_rate_(activity_rate) {}

std::vector<LegalProposition> Court::current_base() const {
  std::vector<LegalProposition> out;
  out.reserve(base_.size());
  for (const auto& [_, lp] : base_) out.push_back(lp);  // map order = id order
  return out;
}

std::vector<std::string> Court::content_keys() const {
  std::vector<std::string> out;
  out.reserve(content_counts_.size());
  for (const auto& [key, count] : content_counts_)
    if (count > 0) out.push_back(key);
  return out;
}

bool Court::holds_content(const std::string& content_key) const {
  auto it = content_counts_.find(content_key);
  return it != content_counts_.end() && it->second > 0;
}

CourtEvent& Court::append(CourtEvent event) {
  event.seq = event_seq_++;
  event.court_id = id_;
  log_.push_back(std::move(event));
  apply(log_.back());
  return log_.back();
}

void Court::apply(const CourtEvent& event) {
  switch (event.kind) {
    case EventKind::Issue:
    case EventKind::Import: {
      const LegalProposition& lp = *event.payload;
      base_.insert_or_assign(lp.id, lp);
      ++content_counts_[lp.content_key()];
      break;
    }
    case EventKind::Withdraw: {
      auto it = base_.find(event.lp_id);
      --content_counts_[it->second.content_key()];
      base_.erase(it);
      break;
    }
  }
}

std::vector<CourtEvent> Court::issue(Modality modality, std::string action,
                                     Condition condition, EvidenceProfile evidence,
                                     std::uint32_t round, EventReason reason,
                                     const RevisionContext& ctx) {
  if (!evidence.issuing_court || *evidence.issuing_court != id_ ||
      evidence.issue_time != round)
    throw Error(ErrorCode::InvalidInput,
                "issued evidence must carry this court's id and the current round");

  LegalProposition lp;
  lp.id = id_ + ":" + std::to_string(lp_seq_++);
  lp.modality = modality;
  lp.action = std::move(action);
  lp.condition = std::move(condition);
  lp.evidence = std::move(evidence);

  std::vector<CourtEvent> appended;
  CourtEvent ev;
  ev.kind = EventKind::Issue;
  ev.lp_id = lp.id;
  ev.round = round;
  ev.reason = reason;
  ev.payload = lp;
  appended.push_back(append(std::move(ev)));

  auto revisions = revise(lp, round, ctx);
  appended.insert(appended.end(), revisions.begin(), revisions.end());
  return appended;
}

CourtEvent Court::withdraw(const std::string& lp_id, std::uint32_t round,
                           EventReason reason) {
  if (!base_.contains(lp_id))
    throw Error(ErrorCode::NotInBase,
                "lp '" + lp_id + "' is not in the current base of court '" + id_ + "'");
  CourtEvent ev;
  ev.kind = EventKind::Withdraw;
  ev.lp_id = lp_id;
  ev.round = round;
  ev.reason = reason;
  return append(std::move(ev));
}

std::vector<CourtEvent> Court::import_lp(const LegalProposition& donor_lp,
                                         std::uint32_t round,
                                         const RevisionContext& ctx) {
  if (holds_content(donor_lp.content_key())) return {};

  std::vector<CourtEvent> appended;
  CourtEvent ev;
  ev.kind = EventKind::Import;
  ev.lp_id = donor_lp.id;
  ev.round = round;
  ev.reason = EventReason::GossipImport;
  ev.payload = donor_lp;  // donor identity and evidence preserved
  appended.push_back(append(std::move(ev)));

  auto revisions = revise(donor_lp, round, ctx);
  appended.insert(appended.end(), revisions.begin(), revisions.end());
  return appended;
}

std::vector<CourtEvent> Court::revise(const LegalProposition& new_lp,
                                      std::uint32_t round,
                                      const RevisionContext& ctx) {
  if (revision_policy_ == RevisionPolicy::KeepBoth) return {};

  // Collect targets first: withdrawing while iterating would invalidate the
  // base iterator. Map order makes the withdrawal order deterministic.
  std::vector<std::string> to_withdraw;
  if (revision_policy_ == RevisionPolicy::WithdrawOlderConflicts) {
    for (const auto& [lp_id, lp] : base_) {
      if (lp_id == new_lp.id) continue;
      if (conflicts(new_lp, lp) && lp.evidence.issue_time < round)
        to_withdraw.push_back(lp_id);
    }
  } else {  // WithdrawLowerPriority
    QueryContext qc;
    qc.asking_agent = id_;
    qc.agent_community = community_;
    qc.current_round = round;
    qc.graph = ctx.graph;
    for (const auto& [lp_id, lp] : base_) {
      if (lp_id == new_lp.id) continue;
      if (conflicts(new_lp, lp) &&
          compare(new_lp, lp, qc, *ctx.policy) == Ordering::APrecedes)
        to_withdraw.push_back(lp_id);
    }
  }

  const EventReason reason = revision_policy_ == RevisionPolicy::WithdrawOlderConflicts
                                 ? EventReason::ChangedViewpoint
                                 : EventReason::ConsistencyImprovement;
  std::vector<CourtEvent> events;
  events.reserve(to_withdraw.size());
  for (const std::string& lp_id : to_withdraw)
    events.push_back(withdraw(lp_id, round, reason));
  return events;
}

Court Court::replay(std::string id, std::string community,
                    RevisionPolicy revision_policy, double activity_rate,
                    std::span<const CourtEvent> events) {
  Court court(std::move(id), std::move(community), revision_policy, activity_rate);
  for (const CourtEvent& ev : events) {
    switch (ev.kind) {
      case EventKind::Issue:
      case EventKind::Import: {
        if (!ev.payload)
          throw Error(ErrorCode::ScenarioInvalid,
                      "event log is malformed: " + std::string(to_string(ev.kind)) +
                          " of '" + ev.lp_id + "' has no payload");
        if (ev.kind == EventKind::Issue) {
          // Issue ids must continue this court's own sequence.
          const std::string expected =
              court.id_ + ":" + std::to_string(court.lp_seq_);
          if (ev.lp_id != expected)
            throw Error(ErrorCode::ScenarioInvalid,
                        "event log is malformed: expected issue id '" + expected +
                            "', found '" + ev.lp_id + "'");
          ++court.lp_seq_;
        }
        break;
      }
      case EventKind::Withdraw:
        if (!court.base_.contains(ev.lp_id))
          throw Error(ErrorCode::ScenarioInvalid,
                      "event log is malformed: withdrawal of '" + ev.lp_id +
                          "' does not match an earlier live Issue/Import");
        break;
    }
    CourtEvent copy = ev;
    copy.seq = court.event_seq_++;
    copy.court_id = court.id_;
    court.log_.push_back(std::move(copy));
    court.apply(court.log_.back());
  }
  return court;
}

std::vector<LegalProposition> Court::base_as_of(std::uint32_t round) const {
  std::map<std::string, LegalProposition> live;
  for (const CourtEvent& ev : log_) {
    if (ev.round > round) break;  // log is append-only in round order
    switch (ev.kind) {
      case EventKind::Issue:
      case EventKind::Import:
        live.insert_or_assign(ev.lp_id, *ev.payload);
        break;
      case EventKind::Withdraw:
        live.erase(ev.lp_id);
        break;
    }
  }
  std::vector<LegalProposition> out;
  out.reserve(live.size());
  for (auto& [_, lp] : live) out.push_back(std::move(lp));
  return out;
}

}  // namespace rilsim
