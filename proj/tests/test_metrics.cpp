#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "sarsa_arena/metrics.hpp"

using namespace sarsa_arena;

TEST_CASE("kill-death ratio on published totals") {
  CHECK(*kd_ratio(112420, 48299, 11701) == doctest::Approx(1.87).epsilon(0.005 / 1.87));
  CHECK(*kd_ratio(63934, 52994, 7006) == doctest::Approx(1.07).epsilon(0.005 / 1.07));
  CHECK(*kd_ratio(40466, 54136, 5864) == doctest::Approx(0.67).epsilon(0.005 / 0.67));
  CHECK(*kd_ratio(0, 1, 0) == 0);
  CHECK(*kd_ratio(3, 0, 2) == 1.5);
  CHECK_FALSE(kd_ratio(5, 0, 0));
}

TEST_CASE("hit percentage on published per-life averages") {
  CHECK(*hit_percentage(9.82, 26.84) == doctest::Approx(26.79).epsilon(0.001));
  CHECK(std::abs(*hit_percentage(9.82, 26.84) - 27) < 0.5);
  CHECK(std::abs(*hit_percentage(7.30, 21.41) - 25) < 0.5);
  CHECK(std::abs(*hit_percentage(4.70, 17.83) - 21) < 0.5);
  CHECK(*hit_percentage(5, 0) == 100);
  CHECK_FALSE(hit_percentage(0, 0));
}

TEST_CASE("centred moving average examples") {
  std::vector<double> sevens(20, 7.0);
  auto cma = centred_moving_average(sevens);
  CHECK(cma.size() == 10);
  for (double v : cma) CHECK(v == 7.0);

  std::vector<double> ramp(21);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  auto r = centred_moving_average(ramp);
  // Output 5 belongs to input index 10, value 11.
  REQUIRE(r.size() == 11);
  CHECK(r[5] == 11);

  CHECK(centred_moving_average(std::vector<double>(10, 1.0)).empty());
  CHECK(centred_moving_average(std::vector<double>{}, 3).empty());
  CHECK_THROWS_AS(centred_moving_average(ramp, 4), std::invalid_argument);
  CHECK_THROWS_AS(centred_moving_average(ramp, 0), std::invalid_argument);
  CHECK(centred_moving_average(ramp, 1) == ramp);
}

TEST_CASE("property: moving average equals the brute-force window mean") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + rng.below(80);
    int window = 1 + 2 * rng.below(8);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (auto& v : s) v = rng.uniform(-100, 100);
    auto cma = centred_moving_average(s, window);
    if (n < window) {
      CHECK(cma.empty());
      continue;
    }
    REQUIRE(cma.size() == static_cast<std::size_t>(n - window + 1));
    const int half = window / 2;
    for (int centre = half; centre + half < n; ++centre) {
      double sum = std::accumulate(s.begin() + (centre - half), s.begin() + (centre + half + 1), 0.0);
      CHECK(cma[static_cast<std::size_t>(centre - half)] == sum / window);
    }
  }
}

TEST_CASE("summary statistics") {
  std::vector<double> v{4, 1, 3, 2};
  auto s = summarize(v);
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(s.median == 2);
  CHECK(s.min == 1);
  CHECK(s.max == 4);
  CHECK(s.stddev == doctest::Approx(1.1180339887));
  CHECK(summarize(std::vector<double>{5}).stddev == 0);
  CHECK(summarize(std::vector<double>{3, 1, 2}).median == 2);
  CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("bootstrap interval") {
  Rng rng(52);
  std::vector<double> v;
  for (int i = 0; i < 400; ++i) v.push_back(rng.uniform(0, 10));
  auto ci = bootstrap_mean(v, 2000, 0.95, rng);
  CHECK(ci.lower <= ci.estimate);
  CHECK(ci.estimate <= ci.upper);
  // Standard error of a U(0,10) mean over 400 samples is about 0.144.
  CHECK(ci.upper - ci.lower == doctest::Approx(2 * 1.96 * 0.144).epsilon(0.15));

  std::vector<double> constant(10, 3.0);
  auto c = bootstrap_mean(constant, 100, 0.9, rng);
  CHECK(c.lower == 3.0);
  CHECK(c.upper == 3.0);
  CHECK_THROWS_AS(bootstrap_mean(std::vector<double>{}, 10, 0.9, rng), std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_mean(constant, 10, 1.0, rng), std::invalid_argument);
}
