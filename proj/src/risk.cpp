#include "scalereq/risk.hpp"

#include <algorithm>
#include <set>

namespace scalereq {

std::optional<int> severity(RiskLevel level) noexcept {
  switch (level) {
    case RiskLevel::Green: return 0;
    case RiskLevel::Yellow: return 1;
    case RiskLevel::Red: return 2;
    case RiskLevel::Unassessed: return std::nullopt;
  }
  return std::nullopt;
}

RiskLevel classify(double value, const CapacityBands& bands) noexcept {
  if (value <= bands.green_max) return RiskLevel::Green;
  if (value <= bands.yellow_max) return RiskLevel::Yellow;
  return RiskLevel::Red;
}

std::string_view to_string(RiskBasis basis) {
  switch (basis) {
    case RiskBasis::Bands: return "bands";
    case RiskBasis::Override: return "override";
    case RiskBasis::None: return "none";
  }
  return "none";
}

const RiskCell* RiskMatrix::find(std::string_view operation, std::string_view scenario) const {
  auto it = std::find_if(cells.begin(), cells.end(), [&](const RiskCell& c) {
    return c.operation == operation && c.scenario == scenario;
  });
  return it == cells.end() ? nullptr : &*it;
}

RiskMatrix assess_risk(const Model& model, const EvaluationResult& eval) {
  RiskMatrix matrix;
  for (const auto& op : model.operations) {
    for (const auto& scenario : model.scenarios) {
      RiskCell cell;
      cell.operation = op.name;
      cell.scenario = scenario.name;

      std::optional<double> value;
      if (op.load_output) {
        const Cell* c = eval.cell(scenario.name, *op.load_output);
        if (!c) {
          throw MissingOutput("operation " + op.name + ": load output " + *op.load_output +
                              " missing from evaluation of scenario " + scenario.name);
        }
        value = c->value;
      }
      cell.value = value;

      if (auto it = op.risk_overrides.find(scenario.name); it != op.risk_overrides.end()) {
        cell.level = it->second;
        cell.basis = RiskBasis::Override;
      } else if (op.capacity_bands && value) {
        cell.level = classify(*value, *op.capacity_bands);
        cell.basis = RiskBasis::Bands;
      }
      matrix.cells.push_back(std::move(cell));
    }
  }
  return matrix;
}

namespace {

bool same_cell(const Cell* a, const Cell* b) {
  if (!a || !b) return a == b;
  if (a->value != b->value) return false;
  return a->value || a->status == b->status;
}

}  // namespace

DiffReport diff(const DiffSide& before, const DiffSide& after) {
  std::set<std::string> before_names;
  std::set<std::string> after_names;
  for (const auto& s : before.model.scenarios) before_names.insert(s.name);
  for (const auto& s : after.model.scenarios) after_names.insert(s.name);
  if (before_names != after_names) throw ScenarioMismatch("models define different scenario sets");

  // Parameters in "after" declaration order, then ones only present before.
  std::vector<std::string> parameters;
  for (const auto& p : after.model.parameters) parameters.push_back(p.name);
  for (const auto& p : before.model.parameters) {
    if (!after.model.find_parameter(p.name)) parameters.push_back(p.name);
  }

  DiffReport report;
  for (const auto& scenario : after.model.scenarios) {
    for (const auto& name : parameters) {
      const Cell* b = before.eval.cell(scenario.name, name);
      const Cell* a = after.eval.cell(scenario.name, name);
      const std::optional<double> bv = b ? b->value : std::nullopt;
      const std::optional<double> av = a ? a->value : std::nullopt;
      if (same_cell(b, a)) continue;
      ParameterChange change{scenario.name, name, bv, av, std::nullopt};
      if (bv && av && *bv != 0.0) change.relative_change = (*av - *bv) / *bv;
      report.changed.push_back(std::move(change));
    }
  }

  for (const auto& op : after.model.operations) {
    for (const auto& scenario : after.model.scenarios) {
      const RiskCell* b = before.risk.find(op.name, scenario.name);
      const RiskCell* a = after.risk.find(op.name, scenario.name);
      const RiskLevel bl = b ? b->level : RiskLevel::Unassessed;
      const RiskLevel al = a ? a->level : RiskLevel::Unassessed;
      if (bl != al) report.risk_transitions.push_back({op.name, scenario.name, bl, al});
    }
  }
  return report;
}

}  // namespace scalereq
