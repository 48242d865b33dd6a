#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scalereq/burstiness.hpp"
#include "scalereq/evaluate.hpp"
#include "scalereq/expr.hpp"
#include "scalereq/json_io.hpp"
#include "scalereq/report.hpp"
#include "scalereq/risk.hpp"
#include "scalereq/triage.hpp"
#include "scalereq/validation.hpp"

namespace py = pybind11;
using namespace scalereq;

namespace {

// Everything crossing the boundary is JSON text; the Python layer decodes it.
std::string dump(const ordered_json& j) { return j.dump(); }

ReportFormat format_or_throw(const std::string& token) {
  auto f = report_format_from_string(token);
  if (!f) throw RangeError("unknown format " + token);
  return *f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scalability requirements engine";

  auto error = py::register_exception<Error>(m, "ScalereqError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "FormulaError", error.ptr());
  py::register_exception<SyntaxError>(m, "ModelSyntaxError", error.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", error.ptr());
  py::register_exception<EvalError>(m, "EvaluationError", error.ptr());

  m.def("normalize_model", [](const std::string& text) { return serialize_model(parse_model(text)); });
  m.def("validate", [](const std::string& text) { return dump(to_json(validate(parse_model(text)))); });
  m.def(
      "evaluate",
      [](const std::string& text, std::optional<std::string> scenario) {
        const Model model = parse_model(text);
        if (!scenario) return dump(to_json(evaluate_all(model), model));
        EvaluationResult result;
        result.evaluation_order = dependency_order(model);
        result.scenarios.push_back(evaluate(model, *scenario));
        return dump(to_json(result, model));
      },
      py::arg("model"), py::arg("scenario") = py::none());
  m.def("dependency_order", [](const std::string& text) { return dependency_order(parse_model(text)); });
  m.def("triage", [](const std::string& text) { return dump(to_json(triage(parse_model(text)))); });
  m.def("checklist", [](const std::string& text) { return dump(to_json(elicitation_checklist(parse_model(text)))); });
  m.def("risk", [](const std::string& text) {
    const Model model = parse_model(text);
    return dump(to_json(assess_risk(model, evaluate_all(model))));
  });
  m.def(
      "render_report",
      [](const std::string& text, const std::string& format) {
        const Model model = parse_model(text);
        const EvaluationResult eval = evaluate_all(model);
        return render_report(model, eval, assess_risk(model, eval), triage(model), format_or_throw(format));
      },
      py::arg("model"), py::arg("format") = "md");

  m.def("burstiness_from_series", [](const std::vector<double>& samples) { return burstiness_from_series(samples); });
  m.def("burstiness_from_active_hours", &burstiness_from_active_hours);
  m.def("compose", [](const std::vector<std::pair<std::string, double>>& parts) {
    BurstinessComponents components;
    for (const auto& [timescale, ratio] : parts) components.push_back({timescale, ratio});
    return compose(components);
  });

  m.def("canonical_formula", [](const std::string& text) { return print_expr(*parse_expr(text)); });
  m.def("formula_references", [](const std::string& text) { return references(*parse_expr(text)); });
  m.def("format_fixed", [](double value, int precision) { return format_fixed(value, precision); });
}
