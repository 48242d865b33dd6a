#include <algorithm>
#include <chrono>
#include <queue>
#include <random>

#include "doctest.h"
#include "scalereq/evaluate.hpp"
#include "support.hpp"

using namespace scalereq;
using namespace scalereq::testing;

namespace {

const std::string T(kThinSpace);

// Reference topological order: smallest declaration index first, via a heap.
std::vector<std::string> heap_order(const std::vector<std::string>& names,
                                    const std::vector<std::vector<std::size_t>>& deps) {
  const std::size_t n = names.size();
  std::vector<int> pending(n, 0);
  std::vector<std::vector<std::size_t>> users(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d : deps[i]) {
      ++pending[i];
      users[d].push_back(i);
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<std::string> out;
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    out.push_back(names[i]);
    for (std::size_t u : users[i]) {
      if (--pending[u] == 0) ready.push(u);
    }
  }
  return out;
}

std::size_t position(const std::vector<std::string>& order, const std::string& name) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), name) - order.begin());
}

Model scaled_c(double k) {
  Model m = golden();
  for (auto& [s, v] : m.find_parameter("c")->values) *v *= k;
  return m;
}

}  // namespace

TEST_SUITE("display") {
  TEST_CASE("rounding is half away from zero on the decimal form") {
    CHECK(format_fixed(0.5, 0) == "1");
    CHECK(format_fixed(2.5, 0) == "3");
    CHECK(format_fixed(-2.5, 0) == "-3");
    CHECK(format_fixed(0.125, 2) == "0.13");
    CHECK(format_fixed(1.005, 2) == "1.01");
    CHECK(format_fixed(0.695, 2) == "0.70");
    CHECK(format_fixed(41.666666666666664, 0) == "42");
    CHECK(format_fixed(0.69444, 1) == "0.7");
    CHECK(format_fixed(16.666666666666668, 1) == "16.7");
    CHECK(format_fixed(0.0, 2) == "0.00");
    CHECK(format_fixed(-0.0001, 2) == "0.00");
  }

  TEST_CASE("thin-space grouping from four integer digits") {
    CHECK(format_fixed(123, 0) == "123");
    CHECK(format_fixed(1234, 0) == "1" + T + "234");
    CHECK(format_fixed(2777.777, 0) == "2" + T + "778");
    CHECK(format_fixed(999.5, 0) == "1" + T + "000");
    CHECK(format_fixed(9'600'000, 0) == "9" + T + "600" + T + "000");
    CHECK(format_fixed(-1234.5, 1) == "-1" + T + "234.5");
    CHECK(format_fixed(1234, 0, ",") == "1,234");
  }

  TEST_CASE("shortest round trip text") {
    CHECK(format_shortest(4.8) == "4.8");
    CHECK(format_shortest(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_shortest(3e6) == "3000000");
    CHECK(format_shortest(0.000125) == "0.000125");
    CHECK(format_shortest(1e21) == "1e+21");
    CHECK(format_shortest(1.5e-7) == "1.5e-07");
    CHECK(format_shortest(-0.0) == "-0");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
      const double v = std::ldexp(std::uniform_real_distribution<double>(-1.0, 1.0)(rng),
                                  std::uniform_int_distribution<int>(-90, 90)(rng));
      CHECK(std::stod(format_shortest(v)) == v);
    }
  }
}

TEST_SUITE("dependency order") {
  TEST_CASE("golden order respects references and matches the reference oracle") {
    const Model m = golden();
    const auto order = dependency_order(m);
    REQUIRE(order.size() == m.parameters.size());
    CHECK(position(order, "c") < position(order, "c_a"));
    CHECK(position(order, "a") < position(order, "c_a"));
    CHECK(position(order, "f_a") < position(order, "c_a"));
    CHECK(position(order, "c_a") < position(order, "e_c_s"));
    CHECK(position(order, "e_t_s") < position(order, "e_s"));
    CHECK(position(order, "e_c_s") < position(order, "e_s"));
    CHECK(order.front() == "n_t");
  }

  TEST_CASE("declaration order breaks ties") {
    const Model m = model_with({"s"}, {derived("z", "b + a"), input("b", {{"s", 1.0}}), input("a", {{"s", 2.0}}),
                                       derived("y", "3")});
    CHECK(dependency_order(m) == std::vector<std::string>{"b", "a", "z", "y"});
  }

  TEST_CASE("random DAGs agree with the heap oracle") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 25)(rng);
      // Random permutation of a random DAG; edges go from lower to higher rank.
      std::vector<int> rank(n);
      for (int i = 0; i < n; ++i) rank[i] = i;
      std::shuffle(rank.begin(), rank.end(), rng);
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      std::vector<std::vector<std::size_t>> deps(n);
      std::vector<Parameter> params;
      for (int i = 0; i < n; ++i) {
        std::string formula;
        for (int j = 0; j < n; ++j) {
          if (rank[j] < rank[i] && rng() % 4 == 0) {
            deps[i].push_back(j);
            formula += (formula.empty() ? "" : " + ") + names[j];
          }
        }
        params.push_back(formula.empty() ? input(names[i], {{"s", 1.0}}) : derived(names[i], formula));
      }
      const Model m = model_with({"s"}, params);
      REQUIRE(dependency_order(m) == heap_order(names, deps));
    }
  }

  TEST_CASE("self loop is a single-member cycle") {
    const Model m = model_with({"s"}, {derived("x", "x + 1")});
    try {
      dependency_order(m);
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::Cycle);
      CHECK(e.members() == std::vector<std::string>{"x"});
    }
  }

  TEST_CASE("cycle members exclude parameters that only depend on the cycle") {
    const Model m = model_with({"s"}, {input("i", {{"s", 1.0}}), derived("a", "b + i"), derived("b", "a * 2"),
                                       derived("tail", "a + 1")});
    try {
      dependency_order(m);
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::Cycle);
      CHECK(e.members() == std::vector<std::string>{"a", "b"});
    }
  }

  TEST_CASE("dangling reference") {
    const Model m = model_with({"s"}, {derived("x", "q * 2")});
    try {
      dependency_order(m);
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::MissingReference);
    }
  }
}

TEST_SUITE("evaluate") {
  TEST_CASE("golden scenarios match the independent oracle") {
    const Model m = golden();
    for (std::size_t s = 0; s < kScenarios.size(); ++s) {
      const auto result = evaluate(m, kScenarios[s]);
      for (const auto& [name, expected] : GoldenOracle::derived(s)) {
        CAPTURE(kScenarios[s]);
        CAPTURE(name);
        const Cell* cell = result.find(name);
        REQUIRE(cell);
        REQUIRE(cell->status == CellStatus::Ok);
        CHECK(relative_error(*cell->value, expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("golden displays") {
    const Model m = golden();
    const auto realistic = evaluate(m, "realistic");
    CHECK(realistic.find("c_a")->display == "600" + T + "000");
    CHECK(realistic.find("e_t_s")->display == "42");
    CHECK(realistic.find("e_s")->display == "75");
    CHECK(realistic.find("p_s")->display == "0.7");
    const auto extreme = evaluate(m, "extreme");
    CHECK(extreme.find("e_t_s")->display == "3" + T + "200");
    CHECK(*extreme.find("e_t_s")->value == doctest::Approx(3200.0).epsilon(1e-12));
    CHECK(extreme.find("p_s")->display == "16.7");
    CHECK(extreme.find("e_s")->display == "3" + T + "733");
  }

  TEST_CASE("unknown input that nothing needs does not block evaluation") {
    const auto result = evaluate(golden(), "possible");
    CHECK(result.find("n_h")->status == CellStatus::Unknown);
    CHECK(result.find("e_s")->status == CellStatus::Ok);
  }

  TEST_CASE("unknown required input names input and dependent") {
    const Model m = model_with({"s", "t"}, {input("u", {{"s", std::nullopt}, {"t", 2.0}}), input("k", {{"s", 3.0}, {"t", 3.0}}),
                                            derived("y", "u * k"), derived("z", "k + 1")});
    try {
      evaluate(m, "s");
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::UnknownInput);
      CHECK(e.members() == std::vector<std::string>{"u", "y"});
    }
    CHECK(*evaluate(m, "t").find("y")->value == 6.0);

    const auto all = evaluate_all(m);
    const Cell* y = all.cell("s", "y");
    CHECK(y->status == CellStatus::Unknown);
    CHECK(y->display == "unknown");
    CHECK(y->detail.find("u") != std::string::npos);
    CHECK_FALSE(y->value);
    CHECK(all.cell("s", "z")->status == CellStatus::Ok);
    CHECK(*all.cell("s", "z")->value == 4.0);
    CHECK(all.cell("t", "y")->status == CellStatus::Ok);
  }

  TEST_CASE("division by zero") {
    const Model m = model_with({"s"}, {input("d", {{"s", 0.0}}), derived("q", "1 / d"), derived("r", "q + 1")});
    try {
      evaluate(m, "s");
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::DivisionByZero);
      CHECK(e.members() == std::vector<std::string>{"q"});
    }
    const auto all = evaluate_all(m);
    CHECK(all.cell("s", "q")->status == CellStatus::Error);
    CHECK(all.cell("s", "q")->display == "error");
    CHECK(all.cell("s", "r")->status == CellStatus::Error);
    CHECK(all.cell("s", "r")->detail.find("q") != std::string::npos);
  }

  TEST_CASE("unknown scenario is rejected") {
    CHECK_THROWS_AS(evaluate(golden(), "pessimistic"), RangeError);
  }

  TEST_CASE("zero customers give zero derived load") {
    const Model m = scaled_c(0.0);
    for (const auto& s : kScenarios) {
      const auto result = evaluate(m, s);
      for (const char* name : {"c_a", "p_h", "p_s", "e_t_s", "e_c_s", "e_s"}) {
        CHECK(*result.find(name)->value == 0.0);
      }
    }
  }

  TEST_CASE("derived load is homogeneous of degree one in customers") {
    const Model base = golden();
    const auto before = evaluate_all(base);
    for (double k : {2.0, 4.0, 0.5, 1024.0}) {
      const auto after = evaluate_all(scaled_c(k));
      for (const auto& s : kScenarios) {
        for (const char* name : {"c_a", "p_h", "p_s", "e_t_s", "e_c_s", "e_s"}) {
          CHECK(*after.cell(s, name)->value == k * *before.cell(s, name)->value);
        }
      }
    }
    for (double k : {3.0, 0.1, 7.5, 1e6}) {
      const auto after = evaluate_all(scaled_c(k));
      for (const auto& s : kScenarios) {
        for (const char* name : {"c_a", "p_h", "p_s", "e_t_s", "e_c_s", "e_s"}) {
          CHECK(relative_error(*after.cell(s, name)->value, k * *before.cell(s, name)->value) <= 1e-14);
        }
      }
    }
  }

  TEST_CASE("evaluation is deterministic") {
    const Model m = golden();
    const auto first = evaluate_all(m);
    for (int i = 0; i < 20; ++i) {
      const auto again = evaluate_all(m);
      CHECK(again.evaluation_order == first.evaluation_order);
      for (const auto& s : kScenarios) CHECK(again.find(s)->cells == first.find(s)->cells);
    }
  }

  TEST_CASE("evaluate_all mirrors evaluate on fully known scenarios") {
    const Model m = golden();
    const auto all = evaluate_all(m);
    REQUIRE(all.scenarios.size() == 3);
    for (const auto& s : kScenarios) CHECK(all.find(s)->cells == evaluate(m, s).cells);
  }

  TEST_CASE("golden evaluation runs well inside a second") {
    const Model m = golden();
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 100; ++i) evaluate_all(m);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(elapsed < std::chrono::seconds(1));
  }
}
