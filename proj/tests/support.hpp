#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scalereq/model.hpp"

namespace scalereq::testing {

inline std::string data_path(const std::string& name) { return std::string(SCALEREQ_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Model golden() { return load_model_file(data_path("open_banking.json")); }

inline const std::array<std::string, 3> kScenarios{"realistic", "possible", "extreme"};

// Hard-coded transcription of the open-banking inputs and formulas, written
// directly in C++ so it shares nothing with the model file or the evaluator.
struct GoldenOracle {
  struct Column {
    double n_t, f_a, c, a, p_m, d_m, b_m_p, b_d_p, b_h_p, b_h_b, a_d, f_d, a_c;
  };

  static Column inputs(std::size_t scenario) {
    static const std::array<Column, 3> columns{{
        {1.0, 0.3, 1'000'000.0, 2.0, 1.0, 30.0, 1.5, 2.0, 2.0, 3.0, 4.0, 0.5, 0.2},
        {2.0, 0.5, 2'000'000.0, 3.0, 2.0, 30.0, 1.5, 2.0, 2.0, 3.0, 4.0, 0.5, 0.2},
        {3.0, 0.8, 3'000'000.0, 4.0, 3.0, 30.0, 1.5, 2.0, 2.0, 3.0, 4.0, 0.8, 0.2},
    }};
    return columns.at(scenario);
  }

  static std::map<std::string, double> derived(const Column& in) {
    std::map<std::string, double> out;
    const double c_a = in.c * in.a * in.f_a;
    const double p_h = in.c * in.f_a * in.p_m / (in.d_m * 24.0);
    const double p_s = in.b_m_p * in.b_d_p * in.b_h_p * p_h / 3600.0;
    const double e_t_s = in.n_t * c_a * in.b_h_b * in.a_d * in.f_d / (24.0 * 3600.0);
    const double e_c_s = c_a * in.a_c / 3600.0;
    out["c_a"] = c_a;
    out["p_h"] = p_h;
    out["p_s"] = p_s;
    out["e_t_s"] = e_t_s;
    out["e_c_s"] = e_c_s;
    out["e_s"] = e_t_s + e_c_s;
    return out;
  }

  static std::map<std::string, double> derived(std::size_t scenario) { return derived(inputs(scenario)); }
};

// Directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("scalereq-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Builders for small hand-made models.
inline Parameter input(const std::string& name, std::map<std::string, Value> values,
                       Category category = Category::Other) {
  Parameter p;
  p.name = name;
  p.kind = ParameterKind::Input;
  p.category = category;
  p.values = std::move(values);
  return p;
}

inline Parameter derived(const std::string& name, const std::string& formula, int precision = 0) {
  Parameter p;
  p.name = name;
  p.kind = ParameterKind::Derived;
  p.category = Category::Other;
  p.formula = formula;
  p.precision = precision;
  return p;
}

inline Model model_with(std::vector<std::string> scenarios, std::vector<Parameter> parameters) {
  Model m;
  m.meta.name = "mini";
  for (auto& s : scenarios) m.scenarios.push_back({s, "", "test"});
  m.parameters = std::move(parameters);
  return m;
}

inline double relative_error(double actual, double expected) {
  if (expected == 0.0) return actual == 0.0 ? 0.0 : std::abs(actual);
  return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace scalereq::testing
