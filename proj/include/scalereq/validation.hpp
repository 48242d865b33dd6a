#pragma once

#include <string>
#include <vector>

#include "scalereq/model.hpp"

namespace scalereq {

struct ValidationIssue {
  std::string path;
  std::string code;  // machine-readable class, e.g. "range", "cycle", "unknown_reference"
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

// Checks every model invariant. Violations are returned, never thrown.
ValidationReport validate(const Model& model);

enum class ChecklistStatus { Addressed, Partial, Missing };

std::string_view to_string(ChecklistStatus status);

struct ChecklistItem {
  int index = 0;
  std::string title;
  ChecklistStatus status = ChecklistStatus::Missing;
  std::string evidence;
};

struct ChecklistReport {
  std::vector<ChecklistItem> items;  // always 12, fixed order
};

// Maps the twelve elicitation topics onto evidence found in the model.
//
// Items 1-4 and 12 are read from labelled lines in the model notes
// ("Business requirements:", "Users:", "Workload:", "System boundary:",
// "Consistency:"); a label with text after the colon addresses the item.
// The remaining items are derived from scenarios, parameters and operations.
ChecklistReport elicitation_checklist(const Model& model);

}  // namespace scalereq
