#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sarsa_arena/rl_core.hpp"
#include "support.hpp"

using namespace sarsa_arena;
using sarsa_arena::testing::ReferenceSarsa;

namespace {

const StateId s0(0), s1(1), s2(2);

void fill_random(QTable& t, Rng& rng, int pairs) {
  for (int i = 0; i < pairs; ++i) t.set_q(StateId(rng.below(kStateCount)), rng.below(kActionCount), rng.uniform(-50, 50));
}

}  // namespace

TEST_CASE("learner defaults") {
  LearnerConfig cfg;
  CHECK(cfg.alpha() == 0.7);
  CHECK(cfg.gamma() == 0.5);
  CHECK(cfg.lambda() == 0.9);
  CHECK(cfg == LearnerConfig(0.7, 0.5, 0.9));
}

TEST_CASE("learner parameters outside their ranges are rejected") {
  CHECK_THROWS_AS(LearnerConfig(0.0, 0.5, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(LearnerConfig(1.2, 0.5, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(LearnerConfig(0.7, -0.1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(LearnerConfig(0.7, 0.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(LearnerConfig(0.7, 0.5, std::nan("")), std::invalid_argument);
  CHECK_NOTHROW(LearnerConfig(1.0, 0.0, 0.0));
  CHECK_NOTHROW(LearnerConfig(1.0, 1.0, 1.0));
}

TEST_CASE("default exploration schedule") {
  ExplorationSchedule sched;
  CHECK(epsilon_for_lives(sched, 0) == 0.50);
  CHECK(epsilon_for_lives(sched, 9999) == 0.50);
  CHECK(epsilon_for_lives(sched, 10000) == 0.40);
  CHECK(epsilon_for_lives(sched, 25000) == 0.30);
  CHECK(epsilon_for_lives(sched, 39999) == 0.20);
  CHECK(epsilon_for_lives(sched, 40000) == 0.10);
  CHECK(epsilon_for_lives(sched, 50000) == 0.05);
  CHECK(epsilon_for_lives(sched, 10'000'000) == 0.05);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(ExplorationSchedule(std::vector<ExplorationBand>{}), std::invalid_argument);
  CHECK_THROWS_AS(ExplorationSchedule(std::vector<ExplorationBand>{{5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplorationSchedule(std::vector<ExplorationBand>{{0, 0.5}, {0, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplorationSchedule(std::vector<ExplorationBand>{{0, 0.5}, {10, 1.5}}), std::invalid_argument);
  ExplorationSchedule two(std::vector<ExplorationBand>{{0, 1.0}, {3, 0.0}});
  CHECK(two.epsilon_for_lives(2) == 1.0);
  CHECK(two.epsilon_for_lives(3) == 0.0);
}

TEST_CASE("fresh table is all zeros") {
  QTable t(WeaponCategory::Projectile);
  CHECK(t.category() == WeaponCategory::Projectile);
  CHECK(t.nonzero_count() == 0);
  CHECK(t.active_trace_count() == 0);
  for (int s = 0; s < kStateCount; s += 97) {
    for (int a = 0; a < kActionCount; ++a) {
      CHECK(t.q(StateId(s), a) == 0.0);
      CHECK(t.trace(StateId(s), a) == 0.0);
      CHECK(t.visits(StateId(s), a) == 0);
    }
  }
}

TEST_CASE("action index outside [0,5) is rejected") {
  QTable t(WeaponCategory::Other);
  CHECK_THROWS_AS(t.q(s0, 5), std::invalid_argument);
  CHECK_THROWS_AS(t.q(s0, -1), std::invalid_argument);
  CHECK_THROWS_AS(sarsa_update(t, s0, 7, 1.0, s1, 0, LearnerConfig()), std::invalid_argument);
  CHECK_THROWS_AS(t.set_q(s0, 0, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("single update on a fresh table") {
  QTable t(WeaponCategory::InstantHit);
  auto d = sarsa_update(t, s0, 2, 10.0, s1, 3, LearnerConfig());
  CHECK(d.delta == 10.0);
  CHECK(d.reward == 10.0);
  CHECK(t.q(s0, 2) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(t.trace(s0, 2) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(t.nonzero_count() == 1);
}

TEST_CASE("miss penalty on a fresh table") {
  QTable t(WeaponCategory::InstantHit);
  auto d = sarsa_update(t, s0, 0, -1.0, s1, 0, LearnerConfig());
  CHECK(d.delta == -1.0);
  CHECK(t.q(s0, 0) == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("second step credits the first pair through its trace") {
  QTable t(WeaponCategory::InstantHit);
  LearnerConfig cfg;
  sarsa_update(t, s0, 0, 10.0, s1, 1, cfg);
  auto d = sarsa_update(t, s1, 1, 4.0, s2, 2, cfg);
  CHECK(d.delta == doctest::Approx(4.0));
  CHECK(t.q(s1, 1) == doctest::Approx(2.8));
  CHECK(t.q(s0, 0) == doctest::Approx(8.26));
  CHECK(t.trace(s0, 0) == doctest::Approx(0.45 * 0.45));
}

TEST_CASE("delta uses pre-update values") {
  QTable t(WeaponCategory::InstantHit);
  t.set_q(s0, 0, 3.0);
  t.set_q(s1, 4, 2.0);
  auto d = sarsa_update(t, s0, 0, 1.0, s1, 4, LearnerConfig());
  CHECK(d.delta == doctest::Approx(1.0 + 0.5 * 2.0 - 3.0));
}

TEST_CASE("same pair as current and next") {
  QTable t(WeaponCategory::InstantHit);
  t.set_q(s0, 1, 2.0);
  auto d = sarsa_update(t, s0, 1, 5.0, s0, 1, LearnerConfig());
  CHECK(d.delta == doctest::Approx(5.0 + 1.0 - 2.0));
  CHECK(t.q(s0, 1) == doctest::Approx(2.0 + 0.7 * 4.0));
}

TEST_CASE("zero reward on zero values leaves the table unchanged") {
  QTable t(WeaponCategory::InstantHit);
  auto d = sarsa_update(t, StateId(500), 3, 0.0, StateId(501), 1, LearnerConfig());
  CHECK(d.delta == 0.0);
  CHECK(t.nonzero_count() == 0);
}

TEST_CASE("non-finite reward is rejected") {
  QTable t(WeaponCategory::InstantHit);
  CHECK_THROWS_AS(sarsa_update(t, s0, 0, std::nan(""), s1, 0, LearnerConfig()), std::invalid_argument);
  CHECK_THROWS_AS(sarsa_update(t, s0, 0, INFINITY, s1, 0, LearnerConfig()), std::invalid_argument);
  TableSet set;
  CHECK_THROWS_AS(set.update({WeaponCategory::Other, s0, 0}, -INFINITY, std::nullopt, LearnerConfig()),
                  std::invalid_argument);
}

TEST_CASE("begin_life clears traces and keeps values") {
  QTable t(WeaponCategory::InstantHit);
  LearnerConfig cfg;
  sarsa_update(t, s0, 0, 10.0, s1, 1, cfg);
  sarsa_update(t, s1, 1, 4.0, s2, 2, cfg);
  const double q0 = t.q(s0, 0), q1 = t.q(s1, 1);
  const auto visits = t.visits(s0, 0);
  begin_life(t);
  CHECK(t.active_trace_count() == 0);
  CHECK(t.trace(s0, 0) == 0.0);
  CHECK(t.trace(s1, 1) == 0.0);
  CHECK(t.q(s0, 0) == q0);
  CHECK(t.q(s1, 1) == q1);
  CHECK(t.visits(s0, 0) == visits);

  // After the reset an update on fresh pairs behaves like the fresh-table case.
  auto d = sarsa_update(t, StateId(9), 2, 10.0, StateId(10), 3, cfg);
  CHECK(d.delta == 10.0);
  CHECK(t.q(StateId(9), 2) == doctest::Approx(7.0));
  CHECK(t.q(s0, 0) == q0);

  QTable fresh(WeaponCategory::InstantHit);
  begin_life(fresh);
  CHECK(fresh.nonzero_count() == 0);
}

TEST_CASE("greedy choice returns the unique argmax") {
  QTable t(WeaponCategory::InstantHit);
  const std::array<double, 5> q{0, 3, 1, 0, 0};
  for (int a = 0; a < 5; ++a) t.set_q(s0, a, q[static_cast<std::size_t>(a)]);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    auto c = select_action(t, s0, 0.0, rng);
    CHECK(c.action == 1);
    CHECK_FALSE(c.exploratory);
  }
  CHECK(t.visits(s0, 1) == 100);
}

TEST_CASE("greedy ties are broken uniformly") {
  QTable t(WeaponCategory::InstantHit);
  t.set_q(s0, 1, 2.0);
  t.set_q(s0, 3, 2.0);
  Rng rng(2);
  std::array<int, 5> counts{};
  const int n = 20000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(select_action(t, s0, 0.0, rng).action)];
  CHECK(counts[0] == 0);
  CHECK(counts[2] == 0);
  CHECK(counts[4] == 0);
  CHECK(counts[1] / double(n) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("full exploration is uniform when nothing was visited") {
  // Chi-square against uniform over 5 cells; 4 degrees of freedom, 0.999
  // quantile is 18.47. Visits are reset so every draw sees an unvisited state.
  Rng rng(3);
  std::array<double, 5> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    QTable t(WeaponCategory::Other);
    auto c = select_action(t, s0, 1.0, rng);
    CHECK(c.exploratory);
    counts[static_cast<std::size_t>(c.action)] += 1;
  }
  double chi2 = 0.0;
  for (double c : counts) {
    CHECK(c / n == doctest::Approx(0.2).epsilon(0.1));
    chi2 += (c - n / 5.0) * (c - n / 5.0) / (n / 5.0);
  }
  CHECK(chi2 < 18.47);
}

TEST_CASE("exploration prefers never-taken actions") {
  QTable t(WeaponCategory::Other);
  t.set_visits(s0, 0, 1);
  t.set_visits(s0, 1, 1);
  t.set_visits(s0, 4, 1);
  Rng rng(4);
  std::array<int, 5> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    ++counts[static_cast<std::size_t>(select_action(t, s0, 1.0, rng).action)];
    // Keep 2 and 3 unvisited so every draw faces the same choice.
    t.set_visits(s0, 2, 0);
    t.set_visits(s0, 3, 0);
  }
  CHECK(counts[0] + counts[1] + counts[4] == 0);
  CHECK(counts[2] / double(n) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("exploratory branch frequency matches epsilon") {
  QTable t(WeaponCategory::Other);
  Rng rng(5);
  int exploratory = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) exploratory += select_action(t, StateId(i % kStateCount), 0.3, rng).exploratory;
  CHECK(exploratory / double(n) == doctest::Approx(0.3).epsilon(0.02 / 0.3));
}

TEST_CASE("property: epsilon zero always returns a maximal action") {
  Rng rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    QTable t(WeaponCategory::InstantHit);
    StateId s(rng.below(kStateCount));
    // Small integer values make ties common.
    for (int a = 0; a < kActionCount; ++a) t.set_q(s, a, rng.below(4));
    auto q = t.q_values(s);
    double best = *std::max_element(q.begin(), q.end());
    auto c = select_action(t, s, 0.0, rng);
    CHECK(t.q(s, c.action) == best);
  }
}

TEST_CASE("property: traces stay in [0,1] and decay geometrically") {
  Rng rng(7);
  LearnerConfig cfg;
  QTable t(WeaponCategory::InstantHit);
  for (int step = 0; step < 3000; ++step) {
    StateId s(rng.below(20)), sn(rng.below(20));
    sarsa_update(t, s, rng.below(5), rng.uniform(-1, 60), sn, rng.below(5), cfg);
    if (step % 300 == 0) begin_life(t);
    for (int st = 0; st < 20; ++st) {
      for (int a = 0; a < kActionCount; ++a) {
        double e = t.trace(StateId(st), a);
        REQUIRE(e >= 0.0);
        REQUIRE(e <= 1.0);
        REQUIRE(std::isfinite(t.q(StateId(st), a)));
      }
    }
  }

  QTable u(WeaponCategory::InstantHit);
  sarsa_update(u, s0, 0, 1.0, s1, 0, cfg);
  const double gl = cfg.gamma() * cfg.lambda();
  for (int k = 2; k < 20; ++k) {
    sarsa_update(u, StateId(100 + k), 0, 1.0, StateId(200 + k), 0, cfg);
    double expected = std::pow(gl, k);
    if (expected < kTraceFloor) {
      CHECK(u.trace(s0, 0) == 0.0);
    } else {
      CHECK(u.trace(s0, 0) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: single updates match the reference evaluation") {
  Rng rng(8);
  const LearnerConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    QTable t(WeaponCategory::InstantHit);
    fill_random(t, rng, 40);
    // A few warm-up steps leave a realistic set of live traces behind.
    for (int w = rng.below(6); w > 0; --w) {
      sarsa_update(t, StateId(rng.below(50)), rng.below(5), rng.uniform(-1, 80), StateId(rng.below(50)),
                   rng.below(5), cfg);
    }
    auto ref = ReferenceSarsa::from(t);
    int s = rng.below(50), a = rng.below(5), sn = rng.below(50), an = rng.below(5);
    double r = rng.chance(0.3) ? -1.0 : rng.uniform(0, 100);
    double ref_delta = ref.step(s, a, r, ReferenceSarsa::Key{sn, an}, cfg.alpha(), cfg.gamma(), cfg.lambda());
    auto d = sarsa_update(t, StateId(s), a, r, StateId(sn), an, cfg);
    CHECK(std::abs(d.delta - ref_delta) <= 1e-12);
    CHECK(sarsa_arena::testing::max_q_error(t, ref) <= 1e-12);
  }
}

TEST_CASE("sparse and full-sweep updates agree") {
  Rng rng(9);
  const LearnerConfig cfg;
  QTable sparse(WeaponCategory::MachineGun), full(WeaponCategory::MachineGun);
  for (int step = 0; step < 500; ++step) {
    StateId s(rng.below(kStateCount)), sn(rng.below(kStateCount));
    int a = rng.below(5), an = rng.below(5);
    double r = rng.uniform(-1, 50);
    auto d1 = sarsa_update(sparse, s, a, r, sn, an, cfg);
    auto d2 = sarsa_update_full_sweep(full, s, a, r, sn, an, cfg);
    // The sparse table drops traces under the floor, so the two drift apart
    // by at most alpha * |delta| * floor per step.
    CHECK(std::abs(d1.delta - d2.delta) < 1e-5);
  }
  double worst = 0.0;
  for (int s = 0; s < kStateCount; ++s) {
    for (int a = 0; a < kActionCount; ++a) worst = std::max(worst, std::abs(sparse.q(StateId(s), a) - full.q(StateId(s), a)));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("table set: traces span categories") {
  TableSet set;
  LearnerConfig cfg;
  PairRef a{WeaponCategory::InstantHit, s0, 0};
  PairRef b{WeaponCategory::SlowMoving, s1, 2};
  set.update(a, 10.0, b, cfg);
  set.update(b, 4.0, std::nullopt, cfg);
  CHECK(set[WeaponCategory::SlowMoving].q(s1, 2) == doctest::Approx(2.8));
  CHECK(set[WeaponCategory::InstantHit].q(s0, 0) == doctest::Approx(8.26));
  CHECK(set.nonzero_count() == 2);
  set.begin_life();
  CHECK(set[WeaponCategory::InstantHit].active_trace_count() == 0);
  CHECK(set[WeaponCategory::SlowMoving].active_trace_count() == 0);
}

TEST_CASE("table set: terminal step bootstraps from zero") {
  TableSet set;
  set[WeaponCategory::Other].set_q(s0, 0, 5.0);
  auto d = set.update({WeaponCategory::Other, s0, 0}, 2.0, std::nullopt, LearnerConfig());
  CHECK(d.delta == doctest::Approx(-3.0));
  CHECK(set[WeaponCategory::Other].q(s0, 0) == doctest::Approx(5.0 - 2.1));
}

TEST_CASE("chain MDP converges to the value-iteration fixed point") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CHECK(sarsa_arena::testing::chain_mdp_max_error(seed, 5000, 2500) < 1e-3);
  }
}
