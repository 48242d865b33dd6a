#include "scalereq/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "scalereq/api.hpp"
#include "scalereq/backlog.hpp"
#include "scalereq/burstiness.hpp"
#include "scalereq/evaluate.hpp"
#include "scalereq/report.hpp"
#include "scalereq/risk.hpp"
#include "scalereq/triage.hpp"
#include "scalereq/validation.hpp"

namespace scalereq {

namespace {

constexpr int code(ExitCode c) { return static_cast<int>(c); }

// Raised inside a subcommand to leave with a specific exit code.
struct Exit {
  ExitCode code;
  std::string message;
};

class Console {
 public:
  Console(std::ostream& out, std::ostream& err, bool color) : out(out), err(err), color_(color) {}

  void error(std::string_view text) { err << label("error", "\x1b[31m") << text << '\n'; }
  void warning(std::string_view text) { err << label("warning", "\x1b[33m") << text << '\n'; }

  std::ostream& out;
  std::ostream& err;

 private:
  std::string label(std::string_view name, std::string_view escape) const {
    if (!color_) return std::string(name) + ": ";
    return std::string(escape) + std::string(name) + "\x1b[0m: ";
  }

  bool color_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{ExitCode::UsageOrIo, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Model load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_model(text);
  } catch (const SyntaxError& e) {
    throw Exit{ExitCode::ValidationFailure, path + ": syntax error at " + e.what()};
  } catch (const SchemaError& e) {
    throw Exit{ExitCode::ValidationFailure, path + ": schema error at " + e.what()};
  }
}

// Validation gate for commands that evaluate. Cycles are left to the
// evaluator so they surface as evaluation failures.
void require_valid(const Model& model, Console& console) {
  const ValidationReport report = validate(model);
  std::size_t blocking = 0;
  for (const auto& e : report.errors) {
    if (e.code == "cycle") continue;
    console.error(e.path + ": " + e.message);
    ++blocking;
  }
  if (blocking) throw Exit{ExitCode::ValidationFailure, "model has " + std::to_string(blocking) + " validation error(s)"};
}

EvaluationResult evaluate_checked(const Model& model) {
  try {
    return evaluate_all(model);
  } catch (const EvalError& e) {
    throw Exit{ExitCode::EvaluationFailure, e.what()};
  }
}

ReportFormat format_of(const std::string& token) {
  auto f = report_format_from_string(token);
  if (!f) throw Exit{ExitCode::UsageOrIo, "unsupported format " + token};
  return *f;
}

bool has_cell_errors(const EvaluationResult& eval) {
  for (const auto& s : eval.scenarios) {
    for (const auto& [name, cell] : s.cells) {
      if (cell.status == CellStatus::Error) return true;
    }
  }
  return false;
}

std::vector<double> parse_series(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Exit{ExitCode::UsageOrIo, "invalid series value '" + item + "'"};
    }
    values.push_back(v);
    start = comma + 1;
  }
  return values;
}

struct Options {
  std::string model;
  std::string model_b;
  std::string scenario;
  std::string format = "md";
  std::string out_path;
  std::string series;
  double active_hours = 0.0;
  bool series_given = false;
  bool hours_given = false;
  int port = 0;
  std::string ui_dir;
  std::string backlog;
  std::string into;
};

int cmd_validate(const Options& o, Console& console) {
  const Model model = load(o.model);
  const ValidationReport report = validate(model);
  const ReportFormat format = format_of(o.format);
  if (format == ReportFormat::Json) {
    console.out << render_validation(report, format);
  } else {
    for (const auto& e : report.errors) console.error(e.path + ": " + e.message);
    for (const auto& w : report.warnings) console.warning(w.path + ": " + w.message);
    console.out << report.errors.size() << " error(s), " << report.warnings.size() << " warning(s)\n";
  }
  return code(report.ok() ? ExitCode::Success : ExitCode::ValidationFailure);
}

int cmd_eval(const Options& o, Console& console) {
  const Model model = load(o.model);
  require_valid(model, console);
  const ReportFormat format = format_of(o.format);
  EvaluationResult eval;
  if (!o.scenario.empty()) {
    if (!model.find_scenario(o.scenario)) throw Exit{ExitCode::UsageOrIo, "unknown scenario " + o.scenario};
    try {
      eval.evaluation_order = dependency_order(model);
      eval.scenarios.push_back(evaluate(model, o.scenario));
    } catch (const EvalError& e) {
      throw Exit{ExitCode::EvaluationFailure, e.what()};
    }
  } else {
    eval = evaluate_checked(model);
  }
  console.out << render_evaluation(model, eval, format);
  if (has_cell_errors(eval)) {
    console.error("evaluation produced failed cells");
    return code(ExitCode::EvaluationFailure);
  }
  return code(ExitCode::Success);
}

int cmd_triage(const Options& o, Console& console) {
  const Model model = load(o.model);
  require_valid(model, console);
  console.out << render_triage(model, triage(model), format_of(o.format));
  return code(ExitCode::Success);
}

int cmd_report(const Options& o, Console& console) {
  const Model model = load(o.model);
  require_valid(model, console);
  const EvaluationResult eval = evaluate_checked(model);
  const RiskMatrix risk = assess_risk(model, eval);
  const std::string text = render_report(model, eval, risk, triage(model), format_of(o.format));
  if (o.out_path.empty()) {
    console.out << text;
  } else {
    std::ofstream out(o.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Exit{ExitCode::UsageOrIo, "cannot write " + o.out_path};
    out << text;
    if (!out.flush()) throw Exit{ExitCode::UsageOrIo, "write failed for " + o.out_path};
  }
  return code(has_cell_errors(eval) ? ExitCode::EvaluationFailure : ExitCode::Success);
}

int cmd_checklist(const Options& o, Console& console) {
  const Model model = load(o.model);
  require_valid(model, console);
  console.out << render_checklist(elicitation_checklist(model), ReportFormat::Markdown);
  return code(ExitCode::Success);
}

int cmd_burstiness(const Options& o, Console& console) {
  const bool has_series = o.series_given;
  const bool has_hours = o.hours_given;
  if (has_series == has_hours) throw Exit{ExitCode::UsageOrIo, "give exactly one of --series or --active-hours"};
  try {
    const double ratio = has_series ? burstiness_from_series(parse_series(o.series))
                                    : burstiness_from_active_hours(o.active_hours);
    console.out << format_shortest(ratio) << '\n';
  } catch (const Error& e) {
    throw Exit{ExitCode::UsageOrIo, e.what()};
  }
  return code(ExitCode::Success);
}

int cmd_diff(const Options& o, Console& console) {
  const Model a = load(o.model);
  const Model b = load(o.model_b);
  require_valid(a, console);
  require_valid(b, console);
  const EvaluationResult ea = evaluate_checked(a);
  const EvaluationResult eb = evaluate_checked(b);
  const RiskMatrix ra = assess_risk(a, ea);
  const RiskMatrix rb = assess_risk(b, eb);
  try {
    const DiffReport report = diff({a, ea, ra}, {b, eb, rb});
    console.out << render_diff(report, format_of(o.format));
  } catch (const ScenarioMismatch& e) {
    throw Exit{ExitCode::EvaluationFailure, e.what()};
  }
  return code(ExitCode::Success);
}

int cmd_serve(const Options& o, Console& console) {
  std::unique_ptr<ApiService> service;
  try {
    service = std::make_unique<ApiService>(o.model);
  } catch (const Error& e) {
    throw Exit{ExitCode::ValidationFailure, e.what()};
  }
  httplib::Server server;
  std::optional<std::string> ui;
  if (!o.ui_dir.empty()) ui = o.ui_dir;
  mount_routes(server, *service, ui);
  console.err << "serving " << o.model << " on port " << o.port << '\n';
  if (!server.listen("0.0.0.0", o.port)) throw Exit{ExitCode::UsageOrIo, "cannot listen on port " + std::to_string(o.port)};
  return code(ExitCode::Success);
}

int cmd_ingest(const Options& o, Console& console) {
  Model model = load(o.into);
  std::vector<Operation> operations;
  try {
    operations = ingest_backlog(read_file(o.backlog), model.triage_rule);
  } catch (const CsvError& e) {
    throw Exit{ExitCode::ValidationFailure, o.backlog + ": " + e.what()};
  }
  for (auto& op : operations) model.operations.push_back(std::move(op));
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    for (const auto& e : report.errors) console.error(e.path + ": " + e.message);
    throw Exit{ExitCode::ValidationFailure, "model would not validate after ingest; file left unchanged"};
  }
  try {
    save_model_file(model, o.into);
  } catch (const Error& e) {
    throw Exit{ExitCode::UsageOrIo, e.what()};
  }
  console.out << "appended " << operations.size() << " operation(s) to " << o.into << '\n';
  return code(ExitCode::Success);
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  Console console(out, err, color);
  Options o;
  CLI::App app{"Scalability requirements engine", "scalereq"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check model invariants");
  validate_cmd->add_option("model", o.model, "Model file")->required();
  validate_cmd->add_option("--format", o.format, "md|json")->check(CLI::IsMember({"md", "json"}));

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate parameters for every scenario");
  eval_cmd->add_option("model", o.model, "Model file")->required();
  eval_cmd->add_option("--scenario", o.scenario, "Evaluate one scenario only");
  eval_cmd->add_option("--format", o.format, "json|md|csv")->check(CLI::IsMember({"json", "md", "csv"}));

  auto* triage_cmd = app.add_subcommand("triage", "Scalability triage of the operations");
  triage_cmd->add_option("model", o.model, "Model file")->required();
  triage_cmd->add_option("--format", o.format, "json|md")->check(CLI::IsMember({"json", "md"}));

  auto* report_cmd = app.add_subcommand("report", "Full report: evaluation, triage and risk");
  report_cmd->add_option("model", o.model, "Model file")->required();
  report_cmd->add_option("--out", o.out_path, "Write to this file instead of standard output");
  report_cmd->add_option("--format", o.format, "md|csv|json")->check(CLI::IsMember({"md", "csv", "json"}));

  auto* checklist_cmd = app.add_subcommand("checklist", "Elicitation completeness checklist");
  checklist_cmd->add_option("model", o.model, "Model file")->required();

  auto* burst_cmd = app.add_subcommand("burstiness", "Burstiness ratio from a load series or active hours");
  auto* series_opt = burst_cmd->add_option("--series", o.series, "Comma-separated sub-period averages");
  auto* hours_opt = burst_cmd->add_option("--active-hours", o.active_hours, "Active hours per day, in (0, 24]");

  auto* diff_cmd = app.add_subcommand("diff", "Compare two models");
  diff_cmd->add_option("model-a", o.model, "Before")->required();
  diff_cmd->add_option("model-b", o.model_b, "After")->required();
  diff_cmd->add_option("--format", o.format, "json|md")->check(CLI::IsMember({"json", "md"}));

  auto* serve_cmd = app.add_subcommand("serve", "Serve the model over HTTP");
  serve_cmd->add_option("model", o.model, "Model file")->required();
  serve_cmd->add_option("--port", o.port, "TCP port")->required()->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--ui-dir", o.ui_dir, "Static UI bundle served at /");

  auto* ingest_cmd = app.add_subcommand("ingest", "Append operations from a backlog CSV");
  ingest_cmd->add_option("backlog", o.backlog, "Backlog CSV")->required();
  ingest_cmd->add_option("--into", o.into, "Model file to update")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return code(ExitCode::Success);
  } catch (const CLI::ParseError& e) {
    console.error(e.what());
    err << app.help();
    return code(ExitCode::UsageOrIo);
  }

  o.series_given = series_opt->count() > 0;
  o.hours_given = hours_opt->count() > 0;

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, console);
    if (eval_cmd->parsed()) return cmd_eval(o, console);
    if (triage_cmd->parsed()) return cmd_triage(o, console);
    if (report_cmd->parsed()) return cmd_report(o, console);
    if (checklist_cmd->parsed()) return cmd_checklist(o, console);
    if (burst_cmd->parsed()) return cmd_burstiness(o, console);
    if (diff_cmd->parsed()) return cmd_diff(o, console);
    if (serve_cmd->parsed()) return cmd_serve(o, console);
    if (ingest_cmd->parsed()) return cmd_ingest(o, console);
  } catch (const Exit& e) {
    console.error(e.message);
    return code(e.code);
  } catch (const Error& e) {
    console.error(e.what());
    return code(ExitCode::EvaluationFailure);
  }
  err << app.help();
  return code(ExitCode::UsageOrIo);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_impl(args, out, err, false);
}

int run(const std::vector<std::string>& args) {
  const bool color = std::getenv("SCALEREQ_NO_COLOR") == nullptr && ::isatty(STDERR_FILENO);
  return run_impl(args, std::cout, std::cerr, color);
}

}  // namespace scalereq
