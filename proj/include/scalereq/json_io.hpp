#pragma once

#include "json.hpp"

#include "scalereq/evaluate.hpp"
#include "scalereq/model.hpp"
#include "scalereq/risk.hpp"
#include "scalereq/triage.hpp"
#include "scalereq/validation.hpp"

namespace scalereq {

using ordered_json = nlohmann::ordered_json;

ordered_json model_to_json(const Model& model);
// Throws SchemaError with a path rooted at the document.
Model model_from_json(const nlohmann::json& document);

ordered_json to_json(const Provenance& provenance);
ordered_json to_json(const ValidationReport& report);
ordered_json to_json(const ChecklistReport& report);
ordered_json to_json(const Cell& cell);
ordered_json to_json(const ScenarioEvaluation& evaluation, const Model& model);
ordered_json to_json(const EvaluationResult& result, const Model& model);
ordered_json to_json(const TriageResult& result);
ordered_json to_json(const RiskMatrix& matrix);
ordered_json to_json(const DiffReport& report);

}  // namespace scalereq
