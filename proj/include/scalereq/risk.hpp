#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalereq/evaluate.hpp"
#include "scalereq/model.hpp"

namespace scalereq {

class MissingOutput : public Error {
 public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

// Ordering over green < yellow < red. Unassessed compares as incomparable,
// reported here as std::nullopt.
std::optional<int> severity(RiskLevel level) noexcept;

// Band lookup with boundaries resolving to the less severe color.
RiskLevel classify(double value, const CapacityBands& bands) noexcept;

enum class RiskBasis { Bands, Override, None };

std::string_view to_string(RiskBasis basis);

struct RiskCell {
  std::string operation;
  std::string scenario;
  RiskLevel level = RiskLevel::Unassessed;
  RiskBasis basis = RiskBasis::None;
  std::optional<double> value;

  bool operator==(const RiskCell&) const = default;
};

struct RiskMatrix {
  // Operation-major, both in model declaration order.
  std::vector<RiskCell> cells;

  const RiskCell* find(std::string_view operation, std::string_view scenario) const;
  bool operator==(const RiskMatrix&) const = default;
};

// Throws MissingOutput if a load_output is absent from the evaluation.
RiskMatrix assess_risk(const Model& model, const EvaluationResult& eval);

struct DiffSide {
  const Model& model;
  const EvaluationResult& eval;
  const RiskMatrix& risk;
};

struct ParameterChange {
  std::string scenario;
  std::string parameter;
  std::optional<double> before;
  std::optional<double> after;
  std::optional<double> relative_change;

  bool operator==(const ParameterChange&) const = default;
};

struct RiskTransition {
  std::string operation;
  std::string scenario;
  RiskLevel before = RiskLevel::Unassessed;
  RiskLevel after = RiskLevel::Unassessed;

  bool operator==(const RiskTransition&) const = default;
};

struct DiffReport {
  std::vector<ParameterChange> changed;
  std::vector<RiskTransition> risk_transitions;

  bool empty() const noexcept { return changed.empty() && risk_transitions.empty(); }
};

// Throws ScenarioMismatch if the two sides have different scenario sets.
DiffReport diff(const DiffSide& before, const DiffSide& after);

}  // namespace scalereq
