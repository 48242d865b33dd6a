#include "scalereq/backlog.hpp"

#include <charconv>
#include <cmath>

namespace scalereq {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw CsvError(rows.size() + 1, "quote inside unquoted field");
        quoted = true;
        field_started = true;
        quote_line = line;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw CsvError(rows.size() + 1, "unterminated quoted field starting on line " + std::to_string(quote_line));
  if (field_started || !row.empty()) end_row();
  return rows;
}

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<Operation> ingest_backlog(std::string_view csv, const TriageRule& /*defaults*/) {
  auto rows = parse_csv(csv);
  if (rows.empty()) throw CsvError(1, "missing header row");
  const std::vector<std::string> expected{"name", "work", "load", "threshold_value", "threshold_unit"};
  std::vector<std::string> header;
  for (const auto& cell : rows.front()) header.push_back(strip(cell));
  if (header != expected) {
    throw CsvError(1, "header must be name,work,load,threshold_value,threshold_unit");
  }

  std::vector<Operation> operations;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t row_number = r + 1;  // 1-based, header is row 1
    const auto& row = rows[r];
    if (row.size() == 1 && strip(row[0]).empty()) continue;  // blank line
    if (row.size() != expected.size()) {
      throw CsvError(row_number, "expected 5 fields, found " + std::to_string(row.size()));
    }
    Operation op;
    op.name = strip(row[0]);
    if (op.name.empty()) throw CsvError(row_number, "operation name is empty");

    auto score = [&](const std::string& cell, std::string_view column) {
      const std::string token = strip(cell);
      auto parsed = score_from_string(token);
      if (!parsed || token == "unknown") {
        throw CsvError(row_number, "unrecognized " + std::string(column) + " score '" + token + "'");
      }
      return *parsed;
    };
    op.work = score(row[1], "work");
    op.load = score(row[2], "load");

    const std::string value = strip(row[3]);
    double threshold = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), threshold);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(threshold)) {
      throw CsvError(row_number, "threshold_value '" + value + "' is not a number");
    }
    op.quality_threshold = {threshold, strip(row[4])};
    op.critical = Criticality::Pending;
    operations.push_back(std::move(op));
  }
  return operations;
}

}  // namespace scalereq
