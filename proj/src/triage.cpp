#include "scalereq/triage.hpp"

namespace scalereq {

std::string_view to_string(Proposal proposal) {
  switch (proposal) {
    case Proposal::Critical: return "critical";
    case Proposal::NonCritical: return "non_critical";
    case Proposal::NeedsReview: return "needs_review";
  }
  return "needs_review";
}

std::string_view to_string(TriageDecision decision) {
  switch (decision) {
    case TriageDecision::Critical: return "critical";
    case TriageDecision::NonCritical: return "non_critical";
    case TriageDecision::Pending: return "pending";
  }
  return "pending";
}

namespace {

std::optional<int> ordinal(Score s) {
  switch (s) {
    case Score::Low: return 1;
    case Score::Medium: return 2;
    case Score::High: return 3;
    case Score::VeryHigh: return 4;
    case Score::Unknown: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> score_product(Score work, Score load) {
  auto w = ordinal(work);
  auto l = ordinal(load);
  if (!w || !l) return std::nullopt;
  return *w * *l;
}

Proposal propose(Score work, Score load, const TriageRule& rule) {
  const auto product = score_product(work, load);
  if (!product) return Proposal::NeedsReview;
  if (*product >= rule.critical_min_product) return Proposal::Critical;
  if (rule.review_on_vh && (work == Score::VeryHigh || load == Score::VeryHigh)) return Proposal::NeedsReview;
  return Proposal::NonCritical;
}

TriageResult triage(const Model& model) {
  TriageResult result;
  for (const auto& op : model.operations) {
    TriageRow row;
    row.operation = op.name;
    row.work = op.work;
    row.load = op.load;
    row.product = score_product(op.work, op.load);
    row.proposal = propose(op.work, op.load, model.triage_rule);

    if (op.critical != Criticality::Pending) {
      // Expert decision wins over the heuristic.
      row.final_decision = op.critical == Criticality::Yes ? TriageDecision::Critical : TriageDecision::NonCritical;
      const bool agrees = (row.proposal == Proposal::Critical && op.critical == Criticality::Yes) ||
                          (row.proposal == Proposal::NonCritical && op.critical == Criticality::No);
      row.override_applied = !agrees;
      row.provenance = op.criticality_provenance;
    } else if (row.proposal == Proposal::Critical) {
      row.final_decision = TriageDecision::Critical;
    } else if (row.proposal == Proposal::NonCritical) {
      row.final_decision = TriageDecision::NonCritical;
    } else {
      row.final_decision = TriageDecision::Pending;
    }

    switch (row.final_decision) {
      case TriageDecision::Critical: ++result.counts.critical; break;
      case TriageDecision::NonCritical: ++result.counts.non_critical; break;
      case TriageDecision::Pending: ++result.counts.pending; break;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace scalereq
