#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "scalereq/evaluate.hpp"
#include "scalereq/model.hpp"
#include "scalereq/risk.hpp"
#include "scalereq/triage.hpp"
#include "scalereq/validation.hpp"

namespace scalereq {

enum class ReportFormat { Markdown, Csv, Json };

std::optional<ReportFormat> report_format_from_string(std::string_view token);

// Full report: triage table, one table per parameter group, risk matrix.
// Output is byte-deterministic for identical inputs.
std::string render_report(const Model& model, const EvaluationResult& eval, const RiskMatrix& risk,
                          const TriageResult& triage, ReportFormat format);

// Parameter tables only (all scenarios, or the listed scenario subset).
std::string render_evaluation(const Model& model, const EvaluationResult& eval, ReportFormat format);

std::string render_triage(const Model& model, const TriageResult& triage, ReportFormat format);
std::string render_checklist(const ChecklistReport& report, ReportFormat format);
std::string render_validation(const ValidationReport& report, ReportFormat format);
std::string render_diff(const DiffReport& report, ReportFormat format);

}  // namespace scalereq
