#include "scalereq/json_io.hpp"

#include <algorithm>
#include <initializer_list>
#include <set>

namespace scalereq {

namespace {

using nlohmann::json;

std::string type_name(const json& j) { return j.type_name(); }

// Strict view over one JSON object: rejects keys outside `allowed` and
// reports every problem with the path of the offending member.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path, std::initializer_list<std::string_view> allowed)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw SchemaError(path_, "expected object, found " + type_name(object_));
    for (const auto& [key, value] : object_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw SchemaError(child(key), "unknown key");
      }
    }
  }

  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const std::string& path() const noexcept { return path_; }

  bool has(std::string_view key) const { return object_.contains(key); }

  const json& at(std::string_view key) const {
    auto it = object_.find(key);
    if (it == object_.end()) throw SchemaError(child(key), "missing required field");
    return *it;
  }

  std::string string(std::string_view key) const {
    const json& value = at(key);
    if (!value.is_string()) throw SchemaError(child(key), "expected string, found " + type_name(value));
    return value.get<std::string>();
  }

  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : std::move(fallback);
  }

  double number(std::string_view key) const {
    const json& value = at(key);
    if (!value.is_number()) throw SchemaError(child(key), "expected number, found " + type_name(value));
    return value.get<double>();
  }

  bool boolean_or(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& value = at(key);
    if (!value.is_boolean()) throw SchemaError(child(key), "expected boolean, found " + type_name(value));
    return value.get<bool>();
  }

  std::int64_t integer_or(std::string_view key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json& value = at(key);
    if (!value.is_number_integer()) throw SchemaError(child(key), "expected integer, found " + type_name(value));
    return value.get<std::int64_t>();
  }

  const json& array_or_empty(std::string_view key) const {
    static const json kEmpty = json::array();
    if (!has(key)) return kEmpty;
    const json& value = at(key);
    if (!value.is_array()) throw SchemaError(child(key), "expected array, found " + type_name(value));
    return value;
  }

  template <typename Enum>
  Enum token(std::string_view key, std::optional<Enum> (*convert)(std::string_view), std::string_view what) const {
    const std::string text = string(key);
    auto parsed = convert(text);
    if (!parsed) throw SchemaError(child(key), "invalid " + std::string(what) + " '" + text + "'");
    return *parsed;
  }

 private:
  const json& object_;
  std::string path_;
};

std::string indexed(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

Provenance read_provenance(const json& j, const std::string& path) {
  ObjectReader r(j, path, {"source", "date", "note"});
  Provenance p;
  p.source = r.string("source");
  p.date = r.string_or("date", "");
  p.note = r.string_or("note", "");
  return p;
}

Scenario read_scenario(const json& j, const std::string& path) {
  ObjectReader r(j, path, {"name", "description", "rationale"});
  Scenario s;
  s.name = r.string("name");
  s.description = r.string_or("description", "");
  s.rationale = r.string_or("rationale", "");
  return s;
}

Parameter read_parameter(const json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"name", "kind", "category", "unit", "description", "precision", "group", "values", "formula",
                  "reference_values", "provenance"});
  Parameter p;
  p.name = r.string("name");
  p.kind = r.token<ParameterKind>("kind", kind_from_string, "kind");
  p.category = r.token<Category>("category", category_from_string, "category");
  p.unit = r.string_or("unit", "");
  p.description = r.string_or("description", "");
  const auto precision = r.integer_or("precision", 0);
  if (precision < 0 || precision > 17) throw SchemaError(r.child("precision"), "precision must be in [0, 17]");
  p.precision = static_cast<int>(precision);
  p.group = r.string_or("group", "");

  if (r.has("values") && r.has("formula")) throw SchemaError(path, "parameter has both values and formula");
  if (p.is_input()) {
    if (r.has("formula")) throw SchemaError(r.child("formula"), "input parameter must not have a formula");
    if (r.has("values")) {
      const json& values = r.at("values");
      if (!values.is_object()) throw SchemaError(r.child("values"), "expected object, found " + type_name(values));
      for (const auto& [scenario, value] : values.items()) {
        const std::string value_path = r.child("values") + "." + scenario;
        if (value.is_number()) {
          p.values[scenario] = value.get<double>();
        } else if (value.is_string() && value.get<std::string>() == "unknown") {
          p.values[scenario] = std::nullopt;
        } else {
          throw SchemaError(value_path, "expected number or \"unknown\"");
        }
      }
    }
  } else {
    if (r.has("values")) throw SchemaError(r.child("values"), "derived parameter must not have values");
    p.formula = r.string("formula");
  }

  if (r.has("reference_values")) {
    const json& refs = r.at("reference_values");
    if (!refs.is_object()) throw SchemaError(r.child("reference_values"), "expected object");
    for (const auto& [scenario, value] : refs.items()) {
      if (!value.is_number()) throw SchemaError(r.child("reference_values") + "." + scenario, "expected number");
      p.reference_values[scenario] = value.get<double>();
    }
  }
  if (r.has("provenance")) p.provenance = read_provenance(r.at("provenance"), r.child("provenance"));
  return p;
}

Operation read_operation(const json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"name", "work", "load", "work_parameters", "quality_metric", "quality_threshold", "load_output",
                  "capacity_bands", "critical", "criticality_provenance", "risk_overrides"});
  Operation op;
  op.name = r.string("name");
  op.work = r.token<Score>("work", score_from_string, "score");
  op.load = r.token<Score>("load", score_from_string, "score");

  const json& work_parameters = r.array_or_empty("work_parameters");
  for (std::size_t i = 0; i < work_parameters.size(); ++i) {
    ObjectReader w(work_parameters[i], indexed(r.child("work_parameters"), i), {"name", "unit", "description"});
    op.work_parameters.push_back({w.string("name"), w.string_or("unit", ""), w.string_or("description", "")});
  }

  op.quality_metric = r.string_or("quality_metric", "");
  {
    ObjectReader t(r.at("quality_threshold"), r.child("quality_threshold"), {"value", "unit"});
    op.quality_threshold.value = t.number("value");
    op.quality_threshold.unit = t.string_or("unit", "");
  }
  if (r.has("load_output")) op.load_output = r.string("load_output");
  if (r.has("capacity_bands")) {
    ObjectReader b(r.at("capacity_bands"), r.child("capacity_bands"), {"green_max", "yellow_max"});
    op.capacity_bands = CapacityBands{b.number("green_max"), b.number("yellow_max")};
  }
  op.critical = r.has("critical") ? r.token<Criticality>("critical", criticality_from_string, "criticality")
                                  : Criticality::Pending;
  if (r.has("criticality_provenance")) {
    op.criticality_provenance = read_provenance(r.at("criticality_provenance"), r.child("criticality_provenance"));
  }
  if (r.has("risk_overrides")) {
    const json& overrides = r.at("risk_overrides");
    if (!overrides.is_object()) throw SchemaError(r.child("risk_overrides"), "expected object");
    for (const auto& [scenario, level] : overrides.items()) {
      const std::string level_path = r.child("risk_overrides") + "." + scenario;
      if (!level.is_string()) throw SchemaError(level_path, "expected risk level");
      auto parsed = risk_level_from_string(level.get<std::string>());
      if (!parsed || *parsed == RiskLevel::Unassessed) {
        throw SchemaError(level_path, "risk override must be green, yellow or red");
      }
      op.risk_overrides[scenario] = *parsed;
    }
  }
  return op;
}

ordered_json value_to_json(const Value& value) {
  if (value) return *value;
  return "unknown";
}

ordered_json optional_number(const std::optional<double>& value) {
  if (value) return *value;
  return nullptr;
}

// Scenario-keyed maps are written in model scenario order, then any strays.
template <typename Map, typename Convert>
ordered_json scenario_map(const Map& map, const Model& model, Convert convert) {
  ordered_json out = ordered_json::object();
  std::set<std::string> written;
  for (const auto& scenario : model.scenarios) {
    if (auto it = map.find(scenario.name); it != map.end()) {
      out[scenario.name] = convert(it->second);
      written.insert(scenario.name);
    }
  }
  for (const auto& [key, value] : map) {
    if (!written.count(key)) out[key] = convert(value);
  }
  return out;
}

}  // namespace

Model model_from_json(const json& document) {
  ObjectReader top(document, "", {"meta", "scenarios", "parameters", "operations", "triage_rule", "notes"});
  Model model;
  {
    ObjectReader meta(top.at("meta"), "meta", {"name", "version", "revision"});
    model.meta.name = meta.string("name");
    model.meta.version = meta.string_or("version", "");
    const auto revision = meta.integer_or("revision", 0);
    if (revision < 0) throw SchemaError("meta.revision", "revision must be non-negative");
    model.meta.revision = static_cast<std::uint64_t>(revision);
  }

  const json& scenarios = top.at("scenarios");
  if (!scenarios.is_array()) throw SchemaError("scenarios", "expected array, found " + type_name(scenarios));
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    model.scenarios.push_back(read_scenario(scenarios[i], indexed("scenarios", i)));
  }

  const json& parameters = top.array_or_empty("parameters");
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    model.parameters.push_back(read_parameter(parameters[i], indexed("parameters", i)));
  }

  const json& operations = top.array_or_empty("operations");
  for (std::size_t i = 0; i < operations.size(); ++i) {
    model.operations.push_back(read_operation(operations[i], indexed("operations", i)));
  }

  if (top.has("triage_rule")) {
    ObjectReader rule(top.at("triage_rule"), "triage_rule", {"critical_min_product", "review_on_vh"});
    model.triage_rule.critical_min_product = static_cast<int>(rule.integer_or("critical_min_product", 9));
    model.triage_rule.review_on_vh = rule.boolean_or("review_on_vh", true);
  }
  if (top.has("notes")) model.notes = top.string("notes");
  return model;
}

ordered_json to_json(const Provenance& provenance) {
  ordered_json j;
  j["source"] = provenance.source;
  if (!provenance.date.empty()) j["date"] = provenance.date;
  if (!provenance.note.empty()) j["note"] = provenance.note;
  return j;
}

ordered_json model_to_json(const Model& model) {
  ordered_json j;
  j["meta"] = {{"name", model.meta.name}, {"version", model.meta.version}, {"revision", model.meta.revision}};

  j["scenarios"] = ordered_json::array();
  for (const auto& s : model.scenarios) {
    j["scenarios"].push_back({{"name", s.name}, {"description", s.description}, {"rationale", s.rationale}});
  }

  j["parameters"] = ordered_json::array();
  for (const auto& p : model.parameters) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["kind"] = to_string(p.kind);
    pj["category"] = to_string(p.category);
    pj["unit"] = p.unit;
    pj["description"] = p.description;
    pj["precision"] = p.precision;
    if (!p.group.empty()) pj["group"] = p.group;
    if (p.is_input()) {
      pj["values"] = scenario_map(p.values, model, value_to_json);
    } else {
      pj["formula"] = p.formula;
    }
    if (!p.reference_values.empty()) {
      pj["reference_values"] = scenario_map(p.reference_values, model, [](double v) { return ordered_json(v); });
    }
    if (p.provenance) pj["provenance"] = to_json(*p.provenance);
    j["parameters"].push_back(std::move(pj));
  }

  j["operations"] = ordered_json::array();
  for (const auto& op : model.operations) {
    ordered_json oj;
    oj["name"] = op.name;
    oj["work"] = to_string(op.work);
    oj["load"] = to_string(op.load);
    if (!op.work_parameters.empty()) {
      oj["work_parameters"] = ordered_json::array();
      for (const auto& w : op.work_parameters) {
        oj["work_parameters"].push_back({{"name", w.name}, {"unit", w.unit}, {"description", w.description}});
      }
    }
    oj["quality_metric"] = op.quality_metric;
    oj["quality_threshold"] = {{"value", op.quality_threshold.value}, {"unit", op.quality_threshold.unit}};
    if (op.load_output) oj["load_output"] = *op.load_output;
    if (op.capacity_bands) {
      oj["capacity_bands"] = {{"green_max", op.capacity_bands->green_max},
                              {"yellow_max", op.capacity_bands->yellow_max}};
    }
    oj["critical"] = to_string(op.critical);
    if (op.criticality_provenance) oj["criticality_provenance"] = to_json(*op.criticality_provenance);
    if (!op.risk_overrides.empty()) {
      oj["risk_overrides"] = scenario_map(op.risk_overrides, model, [](RiskLevel l) { return ordered_json(to_string(l)); });
    }
    j["operations"].push_back(std::move(oj));
  }

  j["triage_rule"] = {{"critical_min_product", model.triage_rule.critical_min_product},
                      {"review_on_vh", model.triage_rule.review_on_vh}};
  if (model.notes) j["notes"] = *model.notes;
  return j;
}

namespace {

ordered_json issues_to_json(const std::vector<ValidationIssue>& issues) {
  ordered_json out = ordered_json::array();
  for (const auto& issue : issues) {
    out.push_back({{"path", issue.path}, {"code", issue.code}, {"message", issue.message}});
  }
  return out;
}

std::string_view status_name(CellStatus status) {
  switch (status) {
    case CellStatus::Ok: return "ok";
    case CellStatus::Unknown: return "unknown";
    case CellStatus::Error: return "error";
  }
  return "error";
}

}  // namespace

ordered_json to_json(const ValidationReport& report) {
  return {{"ok", report.ok()}, {"errors", issues_to_json(report.errors)}, {"warnings", issues_to_json(report.warnings)}};
}

ordered_json to_json(const ChecklistReport& report) {
  ordered_json items = ordered_json::array();
  for (const auto& item : report.items) {
    items.push_back({{"index", item.index},
                     {"title", item.title},
                     {"status", to_string(item.status)},
                     {"evidence", item.evidence}});
  }
  return {{"items", std::move(items)}};
}

ordered_json to_json(const Cell& cell) {
  ordered_json j;
  j["value"] = optional_number(cell.value);
  j["display"] = cell.display;
  if (cell.status != CellStatus::Ok) {
    j["status"] = status_name(cell.status);
    j["detail"] = cell.detail;
  }
  return j;
}

ordered_json to_json(const ScenarioEvaluation& evaluation, const Model& model) {
  ordered_json cells = ordered_json::object();
  for (const auto& p : model.parameters) {
    if (const Cell* cell = evaluation.find(p.name)) cells[p.name] = to_json(*cell);
  }
  return cells;
}

ordered_json to_json(const EvaluationResult& result, const Model& model) {
  ordered_json j;
  j["evaluation_order"] = result.evaluation_order;
  ordered_json scenarios = ordered_json::object();
  for (const auto& s : result.scenarios) scenarios[s.scenario] = to_json(s, model);
  j["scenarios"] = std::move(scenarios);
  return j;
}

ordered_json to_json(const TriageResult& result) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.rows) {
    ordered_json r;
    r["operation"] = row.operation;
    r["work"] = to_string(row.work);
    r["load"] = to_string(row.load);
    r["product"] = row.product ? ordered_json(*row.product) : ordered_json(nullptr);
    r["proposal"] = to_string(row.proposal);
    r["final"] = to_string(row.final_decision);
    r["override_applied"] = row.override_applied;
    if (row.provenance) r["provenance"] = to_json(*row.provenance);
    rows.push_back(std::move(r));
  }
  return {{"rows", std::move(rows)},
          {"counts",
           {{"critical", result.counts.critical},
            {"non_critical", result.counts.non_critical},
            {"pending", result.counts.pending}}}};
}

ordered_json to_json(const RiskMatrix& matrix) {
  ordered_json cells = ordered_json::array();
  for (const auto& cell : matrix.cells) {
    cells.push_back({{"operation", cell.operation},
                     {"scenario", cell.scenario},
                     {"level", to_string(cell.level)},
                     {"basis", to_string(cell.basis)},
                     {"value", optional_number(cell.value)}});
  }
  return {{"cells", std::move(cells)}};
}

ordered_json to_json(const DiffReport& report) {
  ordered_json changed = ordered_json::array();
  for (const auto& c : report.changed) {
    changed.push_back({{"scenario", c.scenario},
                       {"parameter", c.parameter},
                       {"before", optional_number(c.before)},
                       {"after", optional_number(c.after)},
                       {"relative_change", optional_number(c.relative_change)}});
  }
  ordered_json transitions = ordered_json::array();
  for (const auto& t : report.risk_transitions) {
    transitions.push_back({{"operation", t.operation},
                           {"scenario", t.scenario},
                           {"before", to_string(t.before)},
                           {"after", to_string(t.after)}});
  }
  return {{"changed", std::move(changed)}, {"risk_transitions", std::move(transitions)}};
}

}  // namespace scalereq
