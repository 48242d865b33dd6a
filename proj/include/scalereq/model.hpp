#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalereq/error.hpp"

namespace scalereq {

// Ordinal work/load score used during triage. Unknown renders as "??".
enum class Score { Low, Medium, High, VeryHigh, Unknown };

enum class ParameterKind { Input, Derived };

enum class Category { Average, Constant, Fraction, Burstiness, Count, Other };

enum class Criticality { Yes, No, Pending };

// Ordered green < yellow < red; unassessed is outside the order.
enum class RiskLevel { Green, Yellow, Red, Unassessed };

// A per-scenario value; std::nullopt is the explicit "unknown" marker.
using Value = std::optional<double>;

struct Provenance {
  std::string source;
  std::string date;  // ISO-8601 calendar date, may be empty
  std::string note;

  bool operator==(const Provenance&) const = default;
};

struct Meta {
  std::string name;
  std::string version;
  std::uint64_t revision = 0;

  bool operator==(const Meta&) const = default;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string rationale;

  bool operator==(const Scenario&) const = default;
};

struct Parameter {
  std::string name;
  ParameterKind kind = ParameterKind::Input;
  Category category = Category::Other;
  std::string unit;
  std::string description;
  int precision = 0;
  // Report table this parameter is listed under; empty means the default group.
  std::string group;
  std::map<std::string, Value> values;  // input only
  std::string formula;                  // derived only
  // Reference figures for comparison; reports footnote mismatches.
  std::map<std::string, double> reference_values;
  std::optional<Provenance> provenance;

  bool is_input() const noexcept { return kind == ParameterKind::Input; }
  bool operator==(const Parameter&) const = default;
};

struct WorkParameter {
  std::string name;
  std::string unit;
  std::string description;

  bool operator==(const WorkParameter&) const = default;
};

struct QualityThreshold {
  double value = 0.0;
  std::string unit;

  bool operator==(const QualityThreshold&) const = default;
};

struct CapacityBands {
  double green_max = 0.0;
  double yellow_max = 0.0;

  bool operator==(const CapacityBands&) const = default;
};

struct Operation {
  std::string name;
  Score work = Score::Unknown;
  Score load = Score::Unknown;
  std::vector<WorkParameter> work_parameters;
  std::string quality_metric;
  QualityThreshold quality_threshold;
  std::optional<std::string> load_output;
  std::optional<CapacityBands> capacity_bands;
  Criticality critical = Criticality::Pending;
  std::optional<Provenance> criticality_provenance;
  std::map<std::string, RiskLevel> risk_overrides;

  bool operator==(const Operation&) const = default;
};

struct TriageRule {
  int critical_min_product = 9;
  bool review_on_vh = true;

  bool operator==(const TriageRule&) const = default;
};

struct Model {
  Meta meta;
  std::vector<Scenario> scenarios;
  std::vector<Parameter> parameters;
  std::vector<Operation> operations;
  TriageRule triage_rule;
  std::optional<std::string> notes;

  const Scenario* find_scenario(std::string_view name) const;
  const Parameter* find_parameter(std::string_view name) const;
  Parameter* find_parameter(std::string_view name);
  const Operation* find_operation(std::string_view name) const;

  bool operator==(const Model&) const = default;
};

// Token conversions shared by the JSON, CSV and report layers.
std::string_view to_string(Score score);
std::string_view to_string(ParameterKind kind);
std::string_view to_string(Category category);
std::string_view to_string(Criticality criticality);
std::string_view to_string(RiskLevel level);

std::optional<Score> score_from_string(std::string_view token);
std::optional<ParameterKind> kind_from_string(std::string_view token);
std::optional<Category> category_from_string(std::string_view token);
std::optional<Criticality> criticality_from_string(std::string_view token);
std::optional<RiskLevel> risk_level_from_string(std::string_view token);

// ASCII identifier: letter or underscore, then letters, digits, underscores.
bool is_identifier(std::string_view text) noexcept;

// True for YYYY-MM-DD with a valid month/day.
bool is_iso_date(std::string_view text) noexcept;

// Parses a model document. Throws SyntaxError or SchemaError.
Model parse_model(std::string_view text);

// Canonical JSON rendering; parse_model(serialize_model(m)) == m.
std::string serialize_model(const Model& model);

Model load_model_file(const std::string& path);

// Writes to a sibling temporary file and renames it over the target.
void save_model_file(const Model& model, const std::string& path);

}  // namespace scalereq
