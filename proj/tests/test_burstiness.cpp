#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "scalereq/burstiness.hpp"
#include "support.hpp"

using namespace scalereq;
using scalereq::testing::relative_error;

namespace {

// Peak over mean computed in long double with an explicit mean.
double oracle(const std::vector<double>& samples) {
  long double sum = 0;
  long double peak = 0;
  for (double s : samples) {
    sum += s;
    peak = std::max<long double>(peak, s);
  }
  return static_cast<double>(peak / (sum / samples.size()));
}

std::vector<double> random_series(std::mt19937& rng) {
  const int n = std::uniform_int_distribution<int>(1, 60)(rng);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(std::uniform_real_distribution<double>(0.0, 1000.0)(rng));
  out[0] += 1.0;
  return out;
}

}  // namespace

TEST_SUITE("burstiness") {
  TEST_CASE("five active hours per day") {
    CHECK(burstiness_from_active_hours(5.0) == doctest::Approx(4.8).epsilon(1e-15));
    CHECK(burstiness_from_active_hours(24.0) == 1.0);
    CHECK(burstiness_from_active_hours(12.0) == 2.0);
    CHECK_THROWS_AS(burstiness_from_active_hours(0.0), RangeError);
    CHECK_THROWS_AS(burstiness_from_active_hours(-3.0), RangeError);
    CHECK_THROWS_AS(burstiness_from_active_hours(25.0), RangeError);
  }

  TEST_CASE("flat day equals the active-hours figure") {
    std::vector<double> day(24, 0.0);
    for (int h = 8; h < 13; ++h) day[h] = 120.0;
    CHECK(burstiness_from_series(day) == doctest::Approx(4.8).epsilon(1e-15));
  }

  TEST_CASE("constant series has ratio one") {
    CHECK(burstiness_from_series(std::vector<double>{7, 7, 7, 7}) == 1.0);
    CHECK(burstiness_from_series(std::vector<double>{0.1, 0.1, 0.1}) == 1.0);
    CHECK(burstiness_from_series(LoadSeries{"day", {3.0}}) == 1.0);
  }

  TEST_CASE("bad series") {
    CHECK_THROWS_AS(burstiness_from_series(std::vector<double>{}), RangeError);
    CHECK_THROWS_AS(burstiness_from_series(std::vector<double>{1.0, -1.0}), RangeError);
    CHECK_THROWS_AS(burstiness_from_series(std::vector<double>{0.0, 0.0}), DegenerateSeries);
    CHECK_THROWS_AS(burstiness_from_series(std::vector<double>{0.0, 0.0}), Error);
  }

  TEST_CASE("general series agree with the long double oracle") {
    std::mt19937 rng(17);
    for (int i = 0; i < 1000; ++i) {
      const auto s = random_series(rng);
      CHECK(relative_error(burstiness_from_series(s), oracle(s)) <= 1e-13);
    }
  }

  TEST_CASE("ratio lies between 1 and the sample count") {
    std::mt19937 rng(18);
    for (int i = 0; i < 1000; ++i) {
      auto s = random_series(rng);
      if (i % 3 == 0) std::fill(s.begin() + 1, s.end(), 0.0);
      const double b = burstiness_from_series(s);
      CHECK(b >= 1.0);
      CHECK(b <= static_cast<double>(s.size()));
    }
  }

  TEST_CASE("scaling the series leaves the ratio unchanged") {
    std::mt19937 rng(19);
    for (int i = 0; i < 500; ++i) {
      const auto s = random_series(rng);
      const double base = burstiness_from_series(s);
      for (double k : {2.0, 0.25, 1024.0}) {
        std::vector<double> scaled(s);
        for (auto& v : scaled) v *= k;
        CHECK(burstiness_from_series(scaled) == base);
      }
      for (double k : {3.0, 0.1, 12345.678}) {
        std::vector<double> scaled(s);
        for (auto& v : scaled) v *= k;
        CHECK(relative_error(burstiness_from_series(scaled), base) <= 1e-14);
      }
    }
  }

  TEST_CASE("composition") {
    CHECK(compose({}) == 1.0);
    const double b = compose({{"month", 1.5}, {"day", 2.0}, {"hour", 2.0}});
    CHECK(b == 6.0);
    CHECK_THROWS_AS(compose({{"day", 0.9}}), RangeError);
  }

  TEST_CASE("composition is order independent and at least every factor") {
    std::mt19937 rng(20);
    for (int i = 0; i < 500; ++i) {
      BurstinessComponents parts;
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      for (int k = 0; k < n; ++k) {
        parts.push_back({"t" + std::to_string(k), std::uniform_real_distribution<double>(1.0, 10.0)(rng)});
      }
      const double product = compose(parts);
      for (const auto& p : parts) CHECK(product >= p.ratio);
      std::shuffle(parts.begin(), parts.end(), rng);
      CHECK(compose(parts) == product);
      std::reverse(parts.begin(), parts.end());
      CHECK(compose(parts) == product);
    }
  }
}
