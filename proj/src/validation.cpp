#include "scalereq/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "scalereq/evaluate.hpp"
#include "scalereq/expr.hpp"

namespace scalereq {

namespace {

std::string number_text(double v) { return format_shortest(v); }

class Collector {
 public:
  void error(std::string path, std::string code, std::string message) {
    report_.errors.push_back({std::move(path), std::move(code), std::move(message)});
  }
  void warning(std::string path, std::string code, std::string message) {
    report_.warnings.push_back({std::move(path), std::move(code), std::move(message)});
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

void check_provenance(const Provenance& p, const std::string& path, Collector& out) {
  if (p.source.empty()) out.error(path + ".source", "required", "provenance source must not be empty");
  if (!p.date.empty() && !is_iso_date(p.date)) {
    out.error(path + ".date", "format", "provenance date '" + p.date + "' is not an ISO-8601 date");
  }
}

// Category range for a concrete value, or an empty string when it is fine.
std::string range_violation(Category category, double value) {
  switch (category) {
    case Category::Fraction:
      if (value < 0.0 || value > 1.0) return "fraction value " + number_text(value) + " is outside [0, 1]";
      break;
    case Category::Burstiness:
      if (value < 1.0) return "burstiness value " + number_text(value) + " is below 1";
      break;
    case Category::Count:
      if (value < 0.0) return "count value " + number_text(value) + " is negative";
      break;
    default: break;
  }
  return {};
}

template <typename T>
void check_names(const std::vector<T>& items, const std::string& section, bool identifiers, Collector& out) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& name = items[i].name;
    const std::string path = section + "[" + (name.empty() ? std::to_string(i) : name) + "]";
    if (name.empty()) {
      out.error(path + ".name", "required", "name must not be empty");
    } else if (identifiers && !is_identifier(name)) {
      out.error(path + ".name", "identifier", "'" + name + "' is not a valid identifier");
    }
    if (!seen.insert(name).second) out.error(path, "duplicate", "duplicate name '" + name + "'");
  }
}

}  // namespace

std::string_view to_string(ChecklistStatus status) {
  switch (status) {
    case ChecklistStatus::Addressed: return "addressed";
    case ChecklistStatus::Partial: return "partial";
    case ChecklistStatus::Missing: return "missing";
  }
  return "missing";
}

ValidationReport validate(const Model& model) {
  Collector out;
  std::set<std::string> scenario_names;
  for (const auto& s : model.scenarios) scenario_names.insert(s.name);

  if (model.meta.name.empty()) out.warning("meta.name", "required", "model has no name");
  if (model.scenarios.empty()) out.warning("scenarios", "empty", "model defines no scenarios");

  check_names(model.scenarios, "scenarios", true, out);
  for (const auto& s : model.scenarios) {
    if (s.rationale.empty()) {
      out.error("scenarios[" + s.name + "].rationale", "required", "scenario " + s.name + " has no rationale");
    }
  }

  check_names(model.parameters, "parameters", true, out);
  std::set<std::string> parameter_names;
  for (const auto& p : model.parameters) parameter_names.insert(p.name);

  bool formulas_resolved = true;
  for (const auto& p : model.parameters) {
    const std::string path = "parameters[" + p.name + "]";
    if (p.precision < 0) out.error(path + ".precision", "range", "precision must be non-negative");
    if (p.is_input()) {
      if (!p.formula.empty()) out.error(path + ".formula", "kind", "input parameter must not have a formula");
      for (const auto& s : model.scenarios) {
        if (!p.values.count(s.name)) {
          out.error(path + ".values." + s.name, "missing_value",
                    p.name + " has no value for scenario " + s.name);
        }
      }
      for (const auto& [scenario, value] : p.values) {
        const std::string value_path = path + ".values." + scenario;
        if (!scenario_names.count(scenario)) {
          out.error(value_path, "unknown_scenario", p.name + " has a value for unknown scenario " + scenario);
          continue;
        }
        if (!value) {
          out.warning(value_path, "unknown_value", p.name + " is unknown in scenario " + scenario);
          continue;
        }
        if (!std::isfinite(*value)) {
          out.error(value_path, "range", p.name + " value in scenario " + scenario + " is not finite");
          continue;
        }
        if (auto problem = range_violation(p.category, *value); !problem.empty()) {
          out.error(value_path, "range", p.name + ": " + problem + " in scenario " + scenario);
        }
      }
    } else {
      if (!p.values.empty()) out.error(path + ".values", "kind", "derived parameter must not have values");
      try {
        ExprPtr formula = parse_expr(p.formula);
        for (const auto& ref : references(*formula)) {
          if (!parameter_names.count(ref)) {
            out.error(path + ".formula", "unknown_reference", "unknown parameter " + ref);
            formulas_resolved = false;
          }
        }
      } catch (const ParseError& e) {
        out.error(path + ".formula", "formula_syntax", std::string("formula does not parse: ") + e.what());
        formulas_resolved = false;
      }
    }
    for (const auto& [scenario, value] : p.reference_values) {
      if (!scenario_names.count(scenario)) {
        out.error(path + ".reference_values." + scenario, "unknown_scenario",
                  p.name + " has a reference value for unknown scenario " + scenario);
      }
    }
    if (p.provenance) check_provenance(*p.provenance, path + ".provenance", out);
  }

  if (formulas_resolved && parameter_names.size() == model.parameters.size()) {
    try {
      dependency_order(model);
    } catch (const EvalError& e) {
      if (e.kind() == EvalErrorKind::Cycle) {
        const std::string first = e.members().empty() ? std::string() : e.members().front();
        out.error("parameters[" + first + "].formula", "cycle", e.detail());
      } else {
        out.error("parameters", "unknown_reference", e.detail());
      }
    }
  }

  check_names(model.operations, "operations", false, out);
  for (const auto& op : model.operations) {
    const std::string path = "operations[" + op.name + "]";
    if (!(op.quality_threshold.value > 0.0) || !std::isfinite(op.quality_threshold.value)) {
      out.error(path + ".quality_threshold.value", "range", "quality threshold must be positive");
    }
    if (op.load_output && !parameter_names.count(*op.load_output)) {
      out.error(path + ".load_output", "unknown_reference", "unknown parameter " + *op.load_output);
    }
    if (op.capacity_bands) {
      const auto& b = *op.capacity_bands;
      if (!(b.green_max >= 0.0 && b.green_max <= b.yellow_max)) {
        out.error(path + ".capacity_bands", "range", "capacity bands need 0 <= green_max <= yellow_max");
      }
    }
    if (op.critical != Criticality::Pending && !op.criticality_provenance) {
      out.error(path + ".criticality_provenance", "provenance",
                "criticality decision on " + op.name + " needs provenance");
    }
    if (op.criticality_provenance) check_provenance(*op.criticality_provenance, path + ".criticality_provenance", out);
    for (const auto& [scenario, level] : op.risk_overrides) {
      if (!scenario_names.count(scenario)) {
        out.error(path + ".risk_overrides." + scenario, "unknown_scenario",
                  "risk override for unknown scenario " + scenario);
      }
    }
    for (std::size_t i = 0; i < op.work_parameters.size(); ++i) {
      if (op.work_parameters[i].name.empty()) {
        out.error(path + ".work_parameters[" + std::to_string(i) + "].name", "required",
                  "work parameter name must not be empty");
      }
    }
  }

  const auto& rule = model.triage_rule;
  if (rule.critical_min_product < 1 || rule.critical_min_product > 16) {
    out.error("triage_rule.critical_min_product", "range", "critical_min_product must be in [1, 16]");
  }
  return out.take();
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Looks for "<label>: text" on its own line in the notes.
ChecklistItem from_notes(int index, std::string title, std::string_view label, const std::optional<std::string>& notes) {
  ChecklistItem item{index, std::move(title), ChecklistStatus::Missing, "no \"" + std::string(label) + ":\" line in notes"};
  if (!notes) return item;
  std::istringstream lines(*notes);
  std::string line;
  const std::string prefix = lower(std::string(label)) + ":";
  while (std::getline(lines, line)) {
    const std::string t = trim(line);
    if (lower(t.substr(0, prefix.size())) != prefix) continue;
    const std::string text = trim(std::string_view(t).substr(prefix.size()));
    if (text.empty()) {
      item.status = ChecklistStatus::Partial;
      item.evidence = "notes carry an empty \"" + std::string(label) + ":\" line";
    } else {
      item.status = ChecklistStatus::Addressed;
      item.evidence = "notes: " + text;
    }
    return item;
  }
  return item;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Inputs reachable from `roots` through derived formulas.
std::set<std::string> required_inputs(const Model& model, const std::vector<std::string>& roots) {
  std::set<std::string> visited;
  std::set<std::string> inputs;
  std::vector<std::string> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    const std::string name = stack.back();
    stack.pop_back();
    if (!visited.insert(name).second) continue;
    const Parameter* p = model.find_parameter(name);
    if (!p) continue;
    if (p->is_input()) {
      inputs.insert(name);
      continue;
    }
    try {
      for (const auto& ref : references(*parse_expr(p->formula))) stack.push_back(ref);
    } catch (const ParseError&) {
    }
  }
  return inputs;
}

}  // namespace

ChecklistReport elicitation_checklist(const Model& model) {
  ChecklistReport report;
  auto& items = report.items;
  const bool has_ops = !model.operations.empty();
  auto add = [&](int index, std::string title, ChecklistStatus status, std::string evidence) {
    items.push_back({index, std::move(title), status, std::move(evidence)});
  };

  items.push_back(from_notes(1, "Overall business requirements", "Business requirements", model.notes));
  items.push_back(from_notes(2, "Type of users", "Users", model.notes));
  items.push_back(from_notes(3, "Type of workload", "Workload", model.notes));
  items.push_back(from_notes(4, "System boundary", "System boundary", model.notes));

  // 5: critical operations
  {
    std::vector<std::string> decided;
    for (const auto& op : model.operations) {
      if (op.critical != Criticality::Pending) decided.push_back(op.name + "=" + std::string(to_string(op.critical)));
    }
    if (!has_ops) {
      add(5, "Critical operations", ChecklistStatus::Missing, "no operations");
    } else if (decided.empty()) {
      add(5, "Critical operations", ChecklistStatus::Partial,
          std::to_string(model.operations.size()) + " operations listed, no expert criticality decision recorded");
    } else {
      add(5, "Critical operations", ChecklistStatus::Addressed,
          std::to_string(model.operations.size()) + " operations triaged; expert decisions: " + join(decided));
    }
  }

  // 6: output load parameter
  std::vector<std::string> outputs;
  {
    std::vector<std::string> bindings;
    for (const auto& op : model.operations) {
      if (op.load_output) {
        outputs.push_back(*op.load_output);
        bindings.push_back(op.name + " -> " + *op.load_output);
      }
    }
    if (!has_ops) {
      add(6, "Output load parameter", ChecklistStatus::Missing, "no operations");
    } else if (bindings.empty()) {
      add(6, "Output load parameter", ChecklistStatus::Partial, "no operation binds a load output");
    } else {
      add(6, "Output load parameter", ChecklistStatus::Addressed, "load outputs: " + join(bindings));
    }
  }

  // 7: input load parameters
  {
    const bool any_input = std::any_of(model.parameters.begin(), model.parameters.end(),
                                       [](const Parameter& p) { return p.is_input(); });
    if (!any_input) {
      add(7, "Input load parameters", ChecklistStatus::Missing, "no input parameters");
    } else if (outputs.empty()) {
      add(7, "Input load parameters", ChecklistStatus::Partial, "input parameters are not connected to a load output");
    } else {
      const auto inputs = required_inputs(model, outputs);
      std::vector<std::string> unknown;
      for (const auto& name : inputs) {
        const Parameter* p = model.find_parameter(name);
        for (const auto& s : model.scenarios) {
          auto it = p->values.find(s.name);
          if (it == p->values.end() || !it->second) {
            unknown.push_back(name + "@" + s.name);
          }
        }
      }
      if (unknown.empty()) {
        add(7, "Input load parameters", ChecklistStatus::Addressed,
            std::to_string(inputs.size()) + " inputs feed the load outputs, all known in every scenario");
      } else {
        add(7, "Input load parameters", ChecklistStatus::Partial, "unknown inputs: " + join(unknown));
      }
    }
  }

  // 8: work
  {
    std::vector<std::string> declared;
    std::vector<std::string> unresolved;
    for (const auto& op : model.operations) {
      for (const auto& w : op.work_parameters) {
        declared.push_back(op.name + "." + w.name);
        const Parameter* p = model.find_parameter(w.name);
        bool known = p != nullptr;
        if (p && p->is_input()) {
          for (const auto& s : model.scenarios) {
            auto it = p->values.find(s.name);
            if (it == p->values.end() || !it->second) known = false;
          }
        }
        if (!known) unresolved.push_back(w.name);
      }
    }
    if (!has_ops) {
      add(8, "Work", ChecklistStatus::Missing, "no operations");
    } else if (declared.empty()) {
      add(8, "Work", ChecklistStatus::Partial, "no operation declares work parameters");
    } else if (!unresolved.empty()) {
      add(8, "Work", ChecklistStatus::Partial,
          "work parameters declared (" + join(declared) + ") but not estimated: " + join(unresolved));
    } else {
      add(8, "Work", ChecklistStatus::Addressed, "work parameters: " + join(declared));
    }
  }

  // 9: quality metric
  {
    std::set<std::string> metrics;
    std::size_t with_metric = 0;
    for (const auto& op : model.operations) {
      if (!op.quality_metric.empty()) {
        ++with_metric;
        metrics.insert(op.quality_metric);
      }
    }
    const std::string listed = join(std::vector<std::string>(metrics.begin(), metrics.end()));
    if (!has_ops) {
      add(9, "Quality metric", ChecklistStatus::Missing, "no operations");
    } else if (with_metric == model.operations.size()) {
      add(9, "Quality metric", ChecklistStatus::Addressed, "metrics: " + listed);
    } else if (with_metric == 0) {
      add(9, "Quality metric", ChecklistStatus::Missing, "no operation names a quality metric");
    } else {
      add(9, "Quality metric", ChecklistStatus::Partial,
          std::to_string(with_metric) + " of " + std::to_string(model.operations.size()) + " operations name a metric");
    }
  }

  // 10: quality thresholds
  {
    std::set<std::string> thresholds;
    for (const auto& op : model.operations) {
      thresholds.insert(format_shortest(op.quality_threshold.value) + " " + op.quality_threshold.unit);
    }
    if (!has_ops) {
      add(10, "Quality thresholds", ChecklistStatus::Missing, "no operations");
    } else {
      add(10, "Quality thresholds", ChecklistStatus::Addressed,
          "thresholds: " + join(std::vector<std::string>(thresholds.begin(), thresholds.end())));
    }
  }

  // 11: scenarios
  {
    std::vector<std::string> names;
    bool all_rationale = true;
    for (const auto& s : model.scenarios) {
      names.push_back(s.name);
      all_rationale = all_rationale && !s.rationale.empty();
    }
    if (model.scenarios.size() < 2) {
      add(11, "Scenarios", ChecklistStatus::Missing,
          "fewer than two scenarios" + (names.empty() ? std::string() : " (" + join(names) + ")"));
    } else if (!all_rationale) {
      add(11, "Scenarios", ChecklistStatus::Partial, "scenarios without rationale among: " + join(names));
    } else {
      add(11, "Scenarios", ChecklistStatus::Addressed, "scenarios with rationale: " + join(names));
    }
  }

  items.push_back(from_notes(12, "Consistency", "Consistency", model.notes));
  return report;
}

}  // namespace scalereq
