#include "scalereq/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>

#include "scalereq/expr.hpp"

namespace scalereq {

std::string_view to_string(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::Cycle: return "cycle";
    case EvalErrorKind::UnknownInput: return "unknown_input";
    case EvalErrorKind::DivisionByZero: return "division_by_zero";
    case EvalErrorKind::MissingReference: return "missing_reference";
  }
  return "cycle";
}

EvalError::EvalError(EvalErrorKind kind, std::string detail, std::vector<std::string> members)
    : Error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)),
      members_(std::move(members)) {}

const Cell* ScenarioEvaluation::find(std::string_view parameter) const {
  auto it = cells.find(std::string(parameter));
  return it == cells.end() ? nullptr : &it->second;
}

const ScenarioEvaluation* EvaluationResult::find(std::string_view scenario) const {
  auto it = std::find_if(scenarios.begin(), scenarios.end(),
                         [&](const ScenarioEvaluation& s) { return s.scenario == scenario; });
  return it == scenarios.end() ? nullptr : &*it;
}

const Cell* EvaluationResult::cell(std::string_view scenario, std::string_view parameter) const {
  const ScenarioEvaluation* s = find(scenario);
  return s ? s->find(parameter) : nullptr;
}

std::string format_shortest(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : value < 0 ? "-inf" : "inf";
  // Plain positional notation in the everyday range, exponent form outside it.
  const double magnitude = std::fabs(value);
  const bool positional = magnitude == 0.0 || (magnitude >= 1e-6 && magnitude < 1e21);
  char buffer[64];
  auto [ptr, ec] = positional ? std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed)
                              : std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

std::string format_fixed(double value, int precision, std::string_view separator) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  precision = std::max(precision, 0);

  // Shortest fixed-notation text that round-trips, e.g. 0.695 -> "0.695".
  char buffer[400];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, std::fabs(value), std::chars_format::fixed);
  std::string text(buffer, ec == std::errc() ? ptr : buffer);
  const auto dot = text.find('.');
  std::string integer = text.substr(0, dot);
  std::string fraction = dot == std::string::npos ? std::string() : text.substr(dot + 1);

  const auto keep = static_cast<std::size_t>(precision);
  bool round_up = false;
  if (fraction.size() > keep) {
    round_up = fraction[keep] >= '5';
    fraction.resize(keep);
  } else {
    fraction.append(keep - fraction.size(), '0');
  }

  std::string digits = integer + fraction;
  if (round_up) {
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (digits[i] == '9') {
        digits[i] = '0';
      } else {
        ++digits[i];
        break;
      }
      if (i == 0) digits.insert(digits.begin(), '1');
    }
  }
  integer = digits.substr(0, digits.size() - keep);
  fraction = digits.substr(digits.size() - keep);

  const bool zero = std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; });
  std::string out;
  if (value < 0 && !zero) out += '-';
  if (integer.size() >= 4) {
    const std::size_t lead = integer.size() % 3 == 0 ? 3 : integer.size() % 3;
    out += integer.substr(0, lead);
    for (std::size_t i = lead; i < integer.size(); i += 3) {
      out += separator;
      out += integer.substr(i, 3);
    }
  } else {
    out += integer;
  }
  if (keep > 0) {
    out += '.';
    out += fraction;
  }
  return out;
}

namespace {

struct Graph {
  std::vector<std::string> names;             // declaration order
  std::vector<std::vector<std::size_t>> deps;  // deps[i] = indices referenced by i
  std::map<std::string, ExprPtr> formulas;
};

Graph build_graph(const Model& model) {
  Graph g;
  std::map<std::string, std::size_t> index;
  for (const auto& p : model.parameters) {
    index.emplace(p.name, g.names.size());
    g.names.push_back(p.name);
  }
  g.deps.resize(g.names.size());
  for (std::size_t i = 0; i < model.parameters.size(); ++i) {
    const Parameter& p = model.parameters[i];
    if (p.is_input()) continue;
    ExprPtr formula = parse_expr(p.formula);
    for (const auto& ref : references(*formula)) {
      auto it = index.find(ref);
      if (it == index.end()) {
        throw EvalError(EvalErrorKind::MissingReference,
                        "formula of " + p.name + " references unknown parameter " + ref, {p.name, ref});
      }
      g.deps[i].push_back(it->second);
    }
    g.formulas.emplace(p.name, std::move(formula));
  }
  return g;
}

// Nodes of `remaining` that lie on a cycle: members of a strongly connected
// component with more than one node, or with a self-loop.
std::vector<std::size_t> cycle_members(const Graph& g, const std::vector<bool>& remaining) {
  const std::size_t n = g.names.size();
  std::vector<int> order(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<bool> member(n, false);
  int counter = 0;

  std::function<void(std::size_t)> strongconnect = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : g.deps[v]) {
      if (!remaining[w]) continue;
      if (order[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      const bool self_loop = std::find(g.deps[v].begin(), g.deps[v].end(), v) != g.deps[v].end();
      if (component.size() > 1 || self_loop) {
        for (std::size_t c : component) member[c] = true;
      }
    }
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (remaining[v] && order[v] < 0) strongconnect(v);
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (member[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::string> order_of(const Graph& g) {
  const std::size_t n = g.names.size();
  std::vector<bool> done(n, false);
  std::vector<std::string> order;
  order.reserve(n);
  while (order.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const bool ready = std::all_of(g.deps[i].begin(), g.deps[i].end(), [&](std::size_t d) { return done[d]; });
      if (ready) {
        done[i] = true;
        order.push_back(g.names[i]);
        progressed = true;
        break;  // restart so the earliest-declared ready parameter always wins
      }
    }
    if (!progressed) {
      std::vector<bool> remaining(n);
      for (std::size_t i = 0; i < n; ++i) remaining[i] = !done[i];
      std::vector<std::string> members;
      for (std::size_t i : cycle_members(g, remaining)) members.push_back(g.names[i]);
      std::string detail = "cycle among parameters:";
      for (const auto& m : members) detail += " " + m;
      throw EvalError(EvalErrorKind::Cycle, detail, members);
    }
  }
  return order;
}

struct Slot {
  CellStatus status = CellStatus::Ok;
  double value = 0.0;
  std::string root;  // input that is unknown, or parameter where the division failed
  std::string detail;
};

class ScenarioEvaluator {
 public:
  ScenarioEvaluator(const Model& model, const Graph& graph, std::string scenario)
      : model_(model), graph_(graph), scenario_(std::move(scenario)) {}

  ScenarioEvaluation run(const std::vector<std::string>& order) {
    for (const auto& name : order) {
      const Parameter& p = *model_.find_parameter(name);
      slots_[name] = p.is_input() ? bind_input(p) : compute(p);
    }
    ScenarioEvaluation out;
    out.scenario = scenario_;
    for (const auto& p : model_.parameters) {
      const Slot& slot = slots_.at(p.name);
      Cell cell;
      cell.status = slot.status;
      cell.detail = slot.detail;
      switch (slot.status) {
        case CellStatus::Ok:
          cell.value = slot.value;
          cell.display = format_fixed(slot.value, p.precision);
          break;
        case CellStatus::Unknown: cell.display = "unknown"; break;
        case CellStatus::Error: cell.display = "error"; break;
      }
      out.cells.emplace(p.name, std::move(cell));
    }
    return out;
  }

  const Slot& slot(const std::string& name) const { return slots_.at(name); }

 private:
  Slot bind_input(const Parameter& p) const {
    Slot s;
    auto it = p.values.find(scenario_);
    if (it == p.values.end() || !it->second) {
      s.status = CellStatus::Unknown;
      s.root = p.name;
      s.detail = it == p.values.end() ? "no value for scenario " + scenario_ : "input is unknown";
      return s;
    }
    s.value = *it->second;
    return s;
  }

  Slot compute(const Parameter& p) const {
    Slot s = eval(*graph_.formulas.at(p.name), p.name);
    if (s.status == CellStatus::Unknown && s.detail.empty()) s.detail = "depends on unknown input " + s.root;
    return s;
  }

  static Slot combine(const Slot& a, const Slot& b) {
    if (a.status == CellStatus::Error) return a;
    if (b.status == CellStatus::Error) return b;
    if (a.status == CellStatus::Unknown) return a;
    return b;
  }

  Slot eval(const Expr& e, const std::string& owner) const {
    return std::visit(
        [&](const auto& node) -> Slot {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, NumberLiteral>) {
            return Slot{CellStatus::Ok, node.value, {}, {}};
          } else if constexpr (std::is_same_v<T, ParamRef>) {
            const Slot& ref = slots_.at(node.name);
            if (ref.status == CellStatus::Ok) return Slot{CellStatus::Ok, ref.value, {}, {}};
            Slot s;
            s.status = ref.status;
            s.root = ref.root;
            if (ref.status == CellStatus::Unknown) {
              s.detail = "depends on unknown input " + ref.root;
            } else {
              s.detail = "depends on failed parameter " + ref.root;
            }
            return s;
          } else if constexpr (std::is_same_v<T, Negate>) {
            Slot s = eval(*node.operand, owner);
            if (s.status == CellStatus::Ok) s.value = -s.value;
            return s;
          } else {
            Slot lhs = eval(*node.lhs, owner);
            Slot rhs = eval(*node.rhs, owner);
            if (lhs.status != CellStatus::Ok || rhs.status != CellStatus::Ok) return combine(lhs, rhs);
            switch (node.op) {
              case BinaryOperator::Add: return Slot{CellStatus::Ok, lhs.value + rhs.value, {}, {}};
              case BinaryOperator::Subtract: return Slot{CellStatus::Ok, lhs.value - rhs.value, {}, {}};
              case BinaryOperator::Multiply: return Slot{CellStatus::Ok, lhs.value * rhs.value, {}, {}};
              case BinaryOperator::Divide:
                if (rhs.value == 0.0) {
                  return Slot{CellStatus::Error, 0.0, owner, "division by zero in formula of " + owner};
                }
                return Slot{CellStatus::Ok, lhs.value / rhs.value, {}, {}};
            }
            return Slot{};
          }
        },
        e.node);
  }

  const Model& model_;
  const Graph& graph_;
  std::string scenario_;
  std::map<std::string, Slot> slots_;
};

void require_scenario(const Model& model, std::string_view scenario) {
  if (!model.find_scenario(scenario)) throw RangeError("unknown scenario " + std::string(scenario));
}

}  // namespace

std::vector<std::string> dependency_order(const Model& model) { return order_of(build_graph(model)); }

ScenarioEvaluation evaluate(const Model& model, std::string_view scenario) {
  require_scenario(model, scenario);
  const Graph graph = build_graph(model);
  const auto order = order_of(graph);
  ScenarioEvaluator evaluator(model, graph, std::string(scenario));
  ScenarioEvaluation result = evaluator.run(order);
  for (const auto& name : order) {
    const Parameter& p = *model.find_parameter(name);
    if (p.is_input()) continue;
    const Slot& s = evaluator.slot(name);
    if (s.status == CellStatus::Unknown) {
      throw EvalError(EvalErrorKind::UnknownInput,
                      "input " + s.root + " is unknown in scenario " + std::string(scenario) + " but required by " +
                          name,
                      {s.root, name});
    }
    if (s.status == CellStatus::Error) {
      throw EvalError(EvalErrorKind::DivisionByZero,
                      "division by zero in formula of " + s.root + " (scenario " + std::string(scenario) + ")",
                      {s.root});
    }
  }
  return result;
}

EvaluationResult evaluate_all(const Model& model) {
  const Graph graph = build_graph(model);
  EvaluationResult result;
  result.evaluation_order = order_of(graph);
  for (const auto& scenario : model.scenarios) {
    ScenarioEvaluator evaluator(model, graph, scenario.name);
    result.scenarios.push_back(evaluator.run(result.evaluation_order));
  }
  return result;
}

}  // namespace scalereq
