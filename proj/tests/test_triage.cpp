#include <random>

#include "doctest.h"
#include "scalereq/triage.hpp"
#include "support.hpp"

using namespace scalereq;
using scalereq::testing::golden;

namespace {

constexpr Score kScored[] = {Score::Low, Score::Medium, Score::High, Score::VeryHigh};

int rank(Score s) { return static_cast<int>(s) + 1; }

// Table of products with L=1 .. VH=4.
int expected_product(Score w, Score l) { return rank(w) * rank(l); }

struct Expected {
  const char* name;
  Score work;
  Score load;
  int product;
  TriageDecision final_decision;
};

}  // namespace

TEST_SUITE("triage") {
  TEST_CASE("score products") {
    for (Score w : kScored) {
      for (Score l : kScored) CHECK(score_product(w, l) == expected_product(w, l));
      CHECK_FALSE(score_product(w, Score::Unknown));
      CHECK_FALSE(score_product(Score::Unknown, w));
    }
  }

  TEST_CASE("proposal rule") {
    const TriageRule rule;
    CHECK(propose(Score::High, Score::High, rule) == Proposal::Critical);
    CHECK(propose(Score::VeryHigh, Score::Medium, rule) == Proposal::NeedsReview);
    CHECK(propose(Score::VeryHigh, Score::Low, rule) == Proposal::NeedsReview);
    CHECK(propose(Score::VeryHigh, Score::High, rule) == Proposal::Critical);
    CHECK(propose(Score::High, Score::Medium, rule) == Proposal::NonCritical);
    CHECK(propose(Score::Unknown, Score::VeryHigh, rule) == Proposal::NeedsReview);
    CHECK(propose(Score::VeryHigh, Score::Medium, TriageRule{9, false}) == Proposal::NonCritical);
    CHECK(propose(Score::Medium, Score::Medium, TriageRule{4, true}) == Proposal::Critical);
  }

  TEST_CASE("golden operations with expert decisions") {
    const Expected expected[] = {
        {"Payment", Score::High, Score::High, 9, TriageDecision::Critical},
        {"Operation 2", Score::Low, Score::High, 3, TriageDecision::NonCritical},
        {"Operation 3", Score::VeryHigh, Score::Low, 4, TriageDecision::NonCritical},
        {"Operation 4", Score::Low, Score::High, 3, TriageDecision::NonCritical},
        {"Operation 5", Score::Medium, Score::Low, 2, TriageDecision::NonCritical},
        {"Operation 6", Score::Medium, Score::Low, 2, TriageDecision::NonCritical},
        {"Operation 7", Score::High, Score::Low, 3, TriageDecision::NonCritical},
        {"Balance", Score::High, Score::High, 9, TriageDecision::Critical},
        {"Transactions", Score::High, Score::High, 9, TriageDecision::Critical},
        {"Operation 10", Score::Unknown, Score::Low, 0, TriageDecision::NonCritical},
    };
    const auto result = triage(golden());
    REQUIRE(result.rows.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& row = result.rows[i];
      CAPTURE(row.operation);
      CHECK(row.operation == expected[i].name);
      CHECK(row.work == expected[i].work);
      CHECK(row.load == expected[i].load);
      if (expected[i].product) {
        CHECK(row.product == expected[i].product);
      } else {
        CHECK_FALSE(row.product);
      }
      CHECK(row.final_decision == expected[i].final_decision);
    }
    CHECK(result.counts == TriageCounts{3, 7, 0});
    CHECK(result.rows[2].proposal == Proposal::NeedsReview);
    CHECK(result.rows[2].override_applied);
    REQUIRE(result.rows[2].provenance);
    CHECK_FALSE(result.rows[2].provenance->source.empty());
    CHECK(result.rows[9].override_applied);
  }

  TEST_CASE("golden operations without expert decisions leave two pending") {
    auto m = golden();
    for (auto& op : m.operations) {
      op.critical = Criticality::Pending;
      op.criticality_provenance.reset();
    }
    const auto result = triage(m);
    CHECK(result.counts == TriageCounts{3, 5, 2});
    CHECK(result.rows[2].final_decision == TriageDecision::Pending);
    CHECK(result.rows[9].final_decision == TriageDecision::Pending);
    for (const auto& row : result.rows) CHECK_FALSE(row.override_applied);
  }

  TEST_CASE("raising a score never lowers the proposal") {
    auto level = [](Proposal p) { return p == Proposal::NonCritical ? 0 : p == Proposal::NeedsReview ? 1 : 2; };
    for (int threshold = 1; threshold <= 16; ++threshold) {
      const TriageRule rule{threshold, false};
      for (Score w : kScored) {
        for (Score l : kScored) {
          for (Score w2 : kScored) {
            if (rank(w2) < rank(w)) continue;
            CHECK(level(propose(w2, l, rule)) >= level(propose(w, l, rule)));
            CHECK(level(propose(l, w2, rule)) >= level(propose(l, w, rule)));
          }
        }
      }
    }
  }

  TEST_CASE("expert decision always wins and triage is idempotent") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
      Model m;
      m.meta.name = "t";
      m.scenarios.push_back({"s", "", "r"});
      const int n = std::uniform_int_distribution<int>(0, 12)(rng);
      for (int i = 0; i < n; ++i) {
        Operation op;
        op.name = "op" + std::to_string(i);
        op.work = static_cast<Score>(rng() % 5);
        op.load = static_cast<Score>(rng() % 5);
        op.critical = static_cast<Criticality>(rng() % 3);
        if (op.critical != Criticality::Pending) op.criticality_provenance = Provenance{"expert", "", ""};
        op.quality_threshold = {1.0, "s"};
        m.operations.push_back(op);
      }
      m.triage_rule = {static_cast<int>(rng() % 16) + 1, rng() % 2 == 0};
      const auto result = triage(m);
      CHECK(triage(m) == result);
      for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& op = m.operations[i];
        const auto& row = result.rows[i];
        if (op.critical == Criticality::Yes) CHECK(row.final_decision == TriageDecision::Critical);
        if (op.critical == Criticality::No) CHECK(row.final_decision == TriageDecision::NonCritical);
        if (op.critical == Criticality::Pending) CHECK_FALSE(row.override_applied);
      }
      const int sum = result.counts.critical + result.counts.non_critical + result.counts.pending;
      CHECK(sum == n);
    }
  }
}
