#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalereq/error.hpp"
#include "scalereq/model.hpp"

namespace scalereq {

enum class EvalErrorKind { Cycle, UnknownInput, DivisionByZero, MissingReference };

std::string_view to_string(EvalErrorKind kind);

class EvalError : public Error {
 public:
  EvalError(EvalErrorKind kind, std::string detail, std::vector<std::string> members = {});

  EvalErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  // Parameters on the cycle, or the offending parameter(s) for other kinds.
  const std::vector<std::string>& members() const noexcept { return members_; }

 private:
  EvalErrorKind kind_;
  std::string detail_;
  std::vector<std::string> members_;
};

enum class CellStatus { Ok, Unknown, Error };

struct Cell {
  CellStatus status = CellStatus::Ok;
  std::optional<double> value;
  std::string display;
  std::string detail;  // why the cell is unknown or failed

  bool operator==(const Cell&) const = default;
};

struct ScenarioEvaluation {
  std::string scenario;
  std::map<std::string, Cell> cells;

  const Cell* find(std::string_view parameter) const;
};

struct EvaluationResult {
  std::vector<std::string> evaluation_order;
  std::vector<ScenarioEvaluation> scenarios;  // model scenario order

  const ScenarioEvaluation* find(std::string_view scenario) const;
  const Cell* cell(std::string_view scenario, std::string_view parameter) const;
};

// Group separator used in human-facing renderings (U+2009 THIN SPACE).
inline constexpr std::string_view kThinSpace = "\xE2\x80\x89";

// Rounds half away from zero at `precision` decimals, working on the shortest
// round-trip decimal form of `value`. Integer digits are grouped in threes
// with `separator` when the integer part has four or more digits.
std::string format_fixed(double value, int precision, std::string_view separator = kThinSpace);

// Shortest decimal text that parses back to the same double. Positional for
// magnitudes in [1e-6, 1e21), exponent notation otherwise.
std::string format_shortest(double value);

// Every reference precedes its user; ties are broken
// by declaration order. Throws EvalError (Cycle or MissingReference).
std::vector<std::string> dependency_order(const Model& model);

// Evaluates one scenario. Throws EvalError when a required input is unknown
// or a division by zero occurs.
ScenarioEvaluation evaluate(const Model& model, std::string_view scenario);

// Evaluates every scenario; value-level problems are recorded per cell.
// Only structural errors (cycle, missing reference) throw.
EvaluationResult evaluate_all(const Model& model);

}  // namespace scalereq
