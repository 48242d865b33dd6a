#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalereq/model.hpp"

namespace scalereq {

enum class Proposal { Critical, NonCritical, NeedsReview };
enum class TriageDecision { Critical, NonCritical, Pending };

std::string_view to_string(Proposal proposal);
std::string_view to_string(TriageDecision decision);

struct TriageRow {
  std::string operation;
  Score work = Score::Unknown;
  Score load = Score::Unknown;
  std::optional<int> product;
  Proposal proposal = Proposal::NeedsReview;
  TriageDecision final_decision = TriageDecision::Pending;
  bool override_applied = false;
  std::optional<Provenance> provenance;

  bool operator==(const TriageRow&) const = default;
};

struct TriageCounts {
  int critical = 0;
  int non_critical = 0;
  int pending = 0;

  bool operator==(const TriageCounts&) const = default;
};

struct TriageResult {
  std::vector<TriageRow> rows;
  TriageCounts counts;

  bool operator==(const TriageResult&) const = default;
};

// L=1, M=2, H=3, VH=4; absent when either side is unknown.
std::optional<int> score_product(Score work, Score load);

Proposal propose(Score work, Score load, const TriageRule& rule);

TriageResult triage(const Model& model);

}  // namespace scalereq
