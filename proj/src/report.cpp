#include "scalereq/report.hpp"

#include <map>
#include <sstream>

#include "scalereq/json_io.hpp"

namespace scalereq {

std::optional<ReportFormat> report_format_from_string(std::string_view token) {
  if (token == "md" || token == "markdown") return ReportFormat::Markdown;
  if (token == "csv") return ReportFormat::Csv;
  if (token == "json") return ReportFormat::Json;
  return std::nullopt;
}

namespace {

constexpr std::string_view kDefaultGroup = "Parameters";
constexpr std::string_view kCrlf = "\r\n";

using Row = std::vector<std::string>;

std::string md_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

// `align` holds one entry per column: 'l' or 'r'.
void md_table(std::ostringstream& out, const Row& header, const std::vector<Row>& rows, std::string_view align) {
  out << '|';
  for (const auto& h : header) out << ' ' << md_escape(h) << " |";
  out << '\n' << '|';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i < align.size() && align[i] == 'r' ? " ---: |" : " --- |");
  out << '\n';
  for (const auto& row : rows) {
    out << '|';
    for (const auto& cell : row) out << ' ' << md_escape(cell) << " |";
    out << '\n';
  }
}

std::string csv_field(std::string_view text) {
  const bool quote = text.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!text.empty() && (text.front() == ' ' || text.back() == ' '));
  if (!quote) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void csv_row(std::ostringstream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << csv_field(row[i]);
  }
  out << kCrlf;
}

// One CSV section: title record, header record, data records.
void csv_section(std::ostringstream& out, bool& first, std::string_view title, const Row& header,
                 const std::vector<Row>& rows) {
  if (!first) out << kCrlf;
  first = false;
  csv_row(out, {std::string(title)});
  csv_row(out, header);
  for (const auto& row : rows) csv_row(out, row);
}

std::string threshold_text(const QualityThreshold& t) {
  std::string out = format_shortest(t.value);
  if (!t.unit.empty()) out += " " + t.unit;
  return out;
}

std::string raw_cell(const Cell* cell) {
  if (!cell) return "";
  if (cell->value) return format_shortest(*cell->value);
  return cell->display;
}

struct Group {
  std::string title;
  std::vector<const Parameter*> parameters;
};

std::vector<Group> groups_of(const Model& model) {
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& p : model.parameters) {
    const std::string title = p.group.empty() ? std::string(kDefaultGroup) : p.group;
    auto [it, inserted] = index.emplace(title, groups.size());
    if (inserted) groups.push_back({title, {}});
    groups[it->second].parameters.push_back(&p);
  }
  return groups;
}

// Cells whose displayed value differs from the recorded reference figure.
std::vector<std::string> divergences(const Group& group, const EvaluationResult& eval) {
  std::vector<std::string> notes;
  for (const Parameter* p : group.parameters) {
    for (const auto& s : eval.scenarios) {
      auto ref = p->reference_values.find(s.scenario);
      if (ref == p->reference_values.end()) continue;
      const Cell* cell = s.find(p->name);
      const std::string expected = format_fixed(ref->second, p->precision);
      const std::string actual = cell ? cell->display : "missing";
      if (expected == actual) continue;
      notes.push_back(p->name + ", " + s.scenario + ": computed " + actual + " from the formula; reference figure " +
                      expected + ".");
    }
  }
  return notes;
}

Row scenario_header(std::initializer_list<std::string> lead, const EvaluationResult& eval) {
  Row header(lead);
  for (const auto& s : eval.scenarios) header.push_back(s.scenario);
  return header;
}

std::vector<Row> group_rows(const Group& group, const EvaluationResult& eval, bool raw) {
  std::vector<Row> rows;
  for (const Parameter* p : group.parameters) {
    Row row{p->name, p->description};
    for (const auto& s : eval.scenarios) {
      const Cell* cell = s.find(p->name);
      row.push_back(raw ? raw_cell(cell) : (cell ? cell->display : ""));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Row> triage_rows(const Model& model, const TriageResult& triage) {
  std::vector<Row> rows;
  for (const auto& row : triage.rows) {
    const Operation* op = model.find_operation(row.operation);
    rows.push_back({row.operation, std::string(to_string(row.load)), std::string(to_string(row.work)),
                    op ? threshold_text(op->quality_threshold) : "", std::string(to_string(row.final_decision))});
  }
  return rows;
}

const Row kTriageHeader{"Operation", "Load", "Work", "Quality threshold", "Final"};

std::vector<Row> risk_rows(const Model& model, const RiskMatrix& risk) {
  std::vector<Row> rows;
  for (const auto& op : model.operations) {
    Row row{op.name, op.load_output.value_or("-")};
    for (const auto& s : model.scenarios) {
      const RiskCell* cell = risk.find(op.name, s.name);
      row.push_back(std::string(to_string(cell ? cell->level : RiskLevel::Unassessed)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Row risk_header(const Model& model) {
  Row header{"Operation", "Load output"};
  for (const auto& s : model.scenarios) header.push_back(s.name);
  return header;
}

std::string align_for(std::size_t lead, std::size_t numeric) {
  return std::string(lead, 'l') + std::string(numeric, 'r');
}

void md_triage(std::ostringstream& out, const Model& model, const TriageResult& triage) {
  out << "## Scalability triage\n\n";
  if (triage.rows.empty()) {
    out << "No operations.\n";
    return;
  }
  md_table(out, kTriageHeader, triage_rows(model, triage), "lllll");
  out << "\nCritical: " << triage.counts.critical << ". Non-critical: " << triage.counts.non_critical
      << ". Pending: " << triage.counts.pending << ".\n";
}

// Returns the next footnote number.
int md_groups(std::ostringstream& out, const Model& model, const EvaluationResult& eval, int footnote) {
  const auto groups = groups_of(model);
  if (groups.empty()) {
    out << "## " << kDefaultGroup << "\n\nNo parameters.\n";
    return footnote;
  }
  bool first = true;
  for (const auto& group : groups) {
    if (!first) out << '\n';
    first = false;
    out << "## " << md_escape(group.title) << "\n\n";
    md_table(out, scenario_header({"Parameter", "Description"}, eval), group_rows(group, eval, false),
             align_for(2, eval.scenarios.size()));
    const auto notes = divergences(group, eval);
    if (!notes.empty()) {
      out << '\n';
      for (const auto& note : notes) out << "[" << footnote++ << "] " << md_escape(note) << "\n";
    }
  }
  return footnote;
}

void md_risk(std::ostringstream& out, const Model& model, const RiskMatrix& risk) {
  out << "## Risk matrix\n\n";
  if (model.operations.empty()) {
    out << "No operations.\n";
    return;
  }
  md_table(out, risk_header(model), risk_rows(model, risk), align_for(2 + model.scenarios.size(), 0));
}

void csv_groups(std::ostringstream& out, bool& first, const Model& model, const EvaluationResult& eval) {
  std::vector<std::string> notes;
  for (const auto& group : groups_of(model)) {
    csv_section(out, first, group.title, scenario_header({"Parameter", "Description"}, eval),
                group_rows(group, eval, true));
    for (auto& n : divergences(group, eval)) notes.push_back(std::move(n));
  }
  if (!notes.empty()) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < notes.size(); ++i) rows.push_back({std::to_string(i + 1), notes[i]});
    csv_section(out, first, "Notes", {"Note", "Text"}, rows);
  }
}

ordered_json notes_json(const Model& model, const EvaluationResult& eval) {
  ordered_json notes = ordered_json::array();
  for (const auto& group : groups_of(model)) {
    for (const auto& n : divergences(group, eval)) notes.push_back(n);
  }
  return notes;
}

ordered_json groups_json(const Model& model) {
  ordered_json groups = ordered_json::array();
  for (const auto& group : groups_of(model)) {
    ordered_json names = ordered_json::array();
    for (const Parameter* p : group.parameters) names.push_back(p->name);
    groups.push_back({{"title", group.title}, {"parameters", std::move(names)}});
  }
  return groups;
}

}  // namespace

std::string render_report(const Model& model, const EvaluationResult& eval, const RiskMatrix& risk,
                          const TriageResult& triage, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Markdown: {
      out << "# Scalability report: " << md_escape(model.meta.name) << "\n\n";
      out << "Model version " << (model.meta.version.empty() ? "-" : md_escape(model.meta.version))
          << ", revision " << model.meta.revision << ".\n\n";
      md_triage(out, model, triage);
      out << '\n';
      md_groups(out, model, eval, 1);
      out << '\n';
      md_risk(out, model, risk);
      break;
    }
    case ReportFormat::Csv: {
      bool first = true;
      csv_section(out, first, "Scalability triage", kTriageHeader, triage_rows(model, triage));
      csv_groups(out, first, model, eval);
      csv_section(out, first, "Risk matrix", risk_header(model), risk_rows(model, risk));
      break;
    }
    case ReportFormat::Json: {
      ordered_json j;
      j["meta"] = {{"name", model.meta.name}, {"version", model.meta.version}, {"revision", model.meta.revision}};
      j["triage"] = to_json(triage);
      j["groups"] = groups_json(model);
      j["evaluation"] = to_json(eval, model);
      j["risk"] = to_json(risk);
      j["notes"] = notes_json(model, eval);
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string render_evaluation(const Model& model, const EvaluationResult& eval, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Markdown: md_groups(out, model, eval, 1); break;
    case ReportFormat::Csv: {
      bool first = true;
      csv_groups(out, first, model, eval);
      break;
    }
    case ReportFormat::Json: out << to_json(eval, model).dump(2) << '\n'; break;
  }
  return out.str();
}

std::string render_triage(const Model& model, const TriageResult& triage, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Markdown: md_triage(out, model, triage); break;
    case ReportFormat::Csv: {
      bool first = true;
      csv_section(out, first, "Scalability triage", kTriageHeader, triage_rows(model, triage));
      break;
    }
    case ReportFormat::Json: out << to_json(triage).dump(2) << '\n'; break;
  }
  return out.str();
}

std::string render_checklist(const ChecklistReport& report, ReportFormat format) {
  std::ostringstream out;
  const Row header{"#", "Item", "Status", "Evidence"};
  std::vector<Row> rows;
  for (const auto& item : report.items) {
    rows.push_back({std::to_string(item.index), item.title, std::string(to_string(item.status)), item.evidence});
  }
  switch (format) {
    case ReportFormat::Markdown:
      out << "## Elicitation checklist\n\n";
      md_table(out, header, rows, "rlll");
      break;
    case ReportFormat::Csv: {
      bool first = true;
      csv_section(out, first, "Elicitation checklist", header, rows);
      break;
    }
    case ReportFormat::Json: out << to_json(report).dump(2) << '\n'; break;
  }
  return out.str();
}

std::string render_validation(const ValidationReport& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: out << to_json(report).dump(2) << '\n'; break;
    case ReportFormat::Markdown:
    case ReportFormat::Csv:
      for (const auto& e : report.errors) out << "error: " << e.path << ": " << e.message << '\n';
      for (const auto& w : report.warnings) out << "warning: " << w.path << ": " << w.message << '\n';
      out << report.errors.size() << " error(s), " << report.warnings.size() << " warning(s)\n";
      break;
  }
  return out.str();
}

std::string render_diff(const DiffReport& report, ReportFormat format) {
  std::ostringstream out;
  auto text = [](const std::optional<double>& v) { return v ? format_shortest(*v) : std::string("unknown"); };
  std::vector<Row> changed;
  for (const auto& c : report.changed) {
    changed.push_back({c.scenario, c.parameter, text(c.before), text(c.after),
                       c.relative_change ? format_shortest(*c.relative_change) : std::string("-")});
  }
  std::vector<Row> transitions;
  for (const auto& t : report.risk_transitions) {
    transitions.push_back({t.operation, t.scenario, std::string(to_string(t.before)), std::string(to_string(t.after))});
  }
  const Row changed_header{"Scenario", "Parameter", "Before", "After", "Relative change"};
  const Row transition_header{"Operation", "Scenario", "Before", "After"};
  switch (format) {
    case ReportFormat::Json: out << to_json(report).dump(2) << '\n'; break;
    case ReportFormat::Markdown:
      out << "## Changed parameters\n\n";
      if (changed.empty()) {
        out << "No changes.\n";
      } else {
        md_table(out, changed_header, changed, "llrrr");
      }
      out << "\n## Risk transitions\n\n";
      if (transitions.empty()) {
        out << "No changes.\n";
      } else {
        md_table(out, transition_header, transitions, "llll");
      }
      break;
    case ReportFormat::Csv: {
      bool first = true;
      csv_section(out, first, "Changed parameters", changed_header, changed);
      csv_section(out, first, "Risk transitions", transition_header, transitions);
      break;
    }
  }
  return out.str();
}

}  // namespace scalereq
