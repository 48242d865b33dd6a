#include "scalereq/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scalereq/json_io.hpp"

namespace scalereq {

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& item) { return item.name == name; });
  return it == items.end() ? nullptr : &*it;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view token) {
  for (const auto& [text, value] : table) {
    if (text == token) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Score>, 6> kScores{{
    {"L", Score::Low},
    {"M", Score::Medium},
    {"H", Score::High},
    {"VH", Score::VeryHigh},
    {"??", Score::Unknown},
    {"unknown", Score::Unknown},
}};

constexpr std::array<std::pair<std::string_view, ParameterKind>, 2> kKinds{{
    {"input", ParameterKind::Input},
    {"derived", ParameterKind::Derived},
}};

constexpr std::array<std::pair<std::string_view, Category>, 6> kCategories{{
    {"average", Category::Average},
    {"constant", Category::Constant},
    {"fraction", Category::Fraction},
    {"burstiness", Category::Burstiness},
    {"count", Category::Count},
    {"other", Category::Other},
}};

constexpr std::array<std::pair<std::string_view, Criticality>, 3> kCriticality{{
    {"yes", Criticality::Yes},
    {"no", Criticality::No},
    {"pending", Criticality::Pending},
}};

constexpr std::array<std::pair<std::string_view, RiskLevel>, 4> kRiskLevels{{
    {"green", RiskLevel::Green},
    {"yellow", RiskLevel::Yellow},
    {"red", RiskLevel::Red},
    {"unassessed", RiskLevel::Unassessed},
}};

}  // namespace

const Scenario* Model::find_scenario(std::string_view name) const { return find_by_name(scenarios, name); }

const Parameter* Model::find_parameter(std::string_view name) const { return find_by_name(parameters, name); }

Parameter* Model::find_parameter(std::string_view name) {
  return const_cast<Parameter*>(std::as_const(*this).find_parameter(name));
}

const Operation* Model::find_operation(std::string_view name) const { return find_by_name(operations, name); }

std::string_view to_string(Score score) {
  switch (score) {
    case Score::Low: return "L";
    case Score::Medium: return "M";
    case Score::High: return "H";
    case Score::VeryHigh: return "VH";
    case Score::Unknown: return "??";
  }
  return "??";
}

std::string_view to_string(ParameterKind kind) { return kind == ParameterKind::Input ? "input" : "derived"; }

std::string_view to_string(Category category) {
  for (const auto& [text, value] : kCategories) {
    if (value == category) return text;
  }
  return "other";
}

std::string_view to_string(Criticality criticality) {
  for (const auto& [text, value] : kCriticality) {
    if (value == criticality) return text;
  }
  return "pending";
}

std::string_view to_string(RiskLevel level) {
  for (const auto& [text, value] : kRiskLevels) {
    if (value == level) return text;
  }
  return "unassessed";
}

std::optional<Score> score_from_string(std::string_view token) { return lookup(kScores, token); }
std::optional<ParameterKind> kind_from_string(std::string_view token) { return lookup(kKinds, token); }
std::optional<Category> category_from_string(std::string_view token) { return lookup(kCategories, token); }
std::optional<Criticality> criticality_from_string(std::string_view token) {
  return lookup(kCriticality, token);
}
std::optional<RiskLevel> risk_level_from_string(std::string_view token) { return lookup(kRiskLevels, token); }

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

bool is_iso_date(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  auto number = [&](std::size_t pos, std::size_t len) {
    int n = 0;
    for (std::size_t i = pos; i < pos + len; ++i) n = n * 10 + (text[i] - '0');
    return n;
  };
  const int year = number(0, 4);
  const int month = number(5, 2);
  const int day = number(8, 2);
  if (month < 1 || month > 12 || day < 1) return false;
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const int limit = kDays[month - 1] + (month == 2 && leap ? 1 : 0);
  return day <= limit;
}

Model parse_model(std::string_view text) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    // Strip nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: ".
    if (auto pos = what.find(": "); pos != std::string::npos) {
      if (auto second = what.find(": ", pos + 2); second != std::string::npos) what = what.substr(second + 2);
    }
    throw SyntaxError(line, column, what);
  }
  return model_from_json(document);
}

std::string serialize_model(const Model& model) { return model_to_json(model).dump(2) + "\n"; }

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

void save_model_file(const Model& model, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + temp.string());
    out << serialize_model(model);
    out.flush();
    if (!out) throw Error("write failed for " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw Error("cannot replace " + path + ": " + ec.message());
  }
}

}  // namespace scalereq
