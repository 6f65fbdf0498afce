#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "sarsa_arena/state_encoder.hpp"

using namespace sarsa_arena;

namespace {

Vec2 rotate(Vec2 v, double deg) {
  double c = std::cos(deg_to_rad(deg)), s = std::sin(deg_to_rad(deg));
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Attribute domains in encoding order, enumerated independently of encode().
template <typename F>
void for_each_attrs(F&& f) {
  for (int d = 0; d < 3; ++d)
    for (int sp = 0; sp < 2; ++sp)
      for (int j = 0; j < 2; ++j)
        for (int r = 0; r < 3; ++r)
          for (int t = 0; t < 3; ++t)
            for (int rot = 0; rot < 6; ++rot)
              for (int ih = 0; ih < 2; ++ih) {
                StateAttributes a;
                a.distance = static_cast<DistanceBand>(d);
                a.speed = static_cast<SpeedBand>(sp);
                a.jumping = j == 1;
                a.direction = {static_cast<Radial>(r), static_cast<Tangential>(t)};
                a.rotation = static_cast<RotationSector>(rot);
                a.instant_hit = ih == 1;
                f(a);
              }
}

}  // namespace

TEST_CASE("distance bands") {
  CHECK(discretize_distance(300) == DistanceBand::Close);
  CHECK(discretize_distance(0) == DistanceBand::Close);
  CHECK(discretize_distance(510) == DistanceBand::Close);
  CHECK(discretize_distance(510.0001) == DistanceBand::Medium);
  CHECK(discretize_distance(1700) == DistanceBand::Medium);
  CHECK(discretize_distance(2000) == DistanceBand::Far);
  CHECK_THROWS_AS(discretize_distance(-1), std::invalid_argument);
  CHECK_THROWS_AS(discretize_distance(NAN), std::invalid_argument);
}

TEST_CASE("speed bands") {
  CHECK(discretize_speed(0, 0) == SpeedBand::Regular);
  CHECK(discretize_speed(800, 0) == SpeedBand::Regular);
  CHECK(discretize_speed(801, 0) == SpeedBand::Fast);
  CHECK(discretize_speed(600, 600) == SpeedBand::Fast);
  CHECK(discretize_speed(-500, 500) == SpeedBand::Regular);
}

TEST_CASE("direction classes") {
  const Vec2 los{1, 0};
  CHECK(classify_direction({0, 0}, los).stationary());
  CHECK(classify_direction({0, 0}, los).ordinal() == 4);
  CHECK(classify_direction({-300, 0}, los) == DirectionClass{Radial::Towards, Tangential::None});
  CHECK(classify_direction({300, 0}, los) == DirectionClass{Radial::Away, Tangential::None});
  // Looking along +x the bot's right is -y.
  CHECK(classify_direction({-40, -200}, los) == DirectionClass{Radial::None, Tangential::Right});
  CHECK(classify_direction({0, 200}, los) == DirectionClass{Radial::None, Tangential::Left});
  CHECK(classify_direction({49.9, 0}, los).radial == Radial::None);
  CHECK(classify_direction({50, 0}, los).radial == Radial::Away);
  CHECK(classify_direction({30, 0}, los, 20.0).radial == Radial::Away);
  // Same motion seen along a rotated line of sight.
  CHECK(classify_direction(rotate({-300, 0}, 77), rotate(los, 77)) ==
        DirectionClass{Radial::Towards, Tangential::None});
}

TEST_CASE("rotation sectors") {
  CHECK(discretize_rotation(0) == RotationSector::FR1);
  CHECK(discretize_rotation(90) == RotationSector::FR2);
  CHECK(discretize_rotation(-150) == RotationSector::BL);
  CHECK(discretize_rotation(-180) == RotationSector::BL);
  CHECK(discretize_rotation(120) == RotationSector::BR);
  CHECK(discretize_rotation(-60) == RotationSector::FL1);
  CHECK(discretize_rotation(-60.0001) == RotationSector::FL2);
  CHECK_THROWS_AS(discretize_rotation(180), std::invalid_argument);
}

TEST_CASE("encode corner cases") {
  StateAttributes min;
  min.direction = {Radial::Towards, Tangential::Left};
  CHECK(encode(min).index() == 0);

  StateAttributes max;
  max.distance = DistanceBand::Far;
  max.speed = SpeedBand::Fast;
  max.jumping = true;
  max.direction = {Radial::Away, Tangential::Right};
  max.rotation = RotationSector::FL1;
  max.instant_hit = true;
  CHECK(encode(max).index() == 1295);
}

TEST_CASE("701 is Medium, Fast, standing, stationary direction, BR, instant-hit") {
  StateAttributes target;
  target.distance = DistanceBand::Medium;
  target.speed = SpeedBand::Fast;
  target.direction = DirectionClass::from_ordinal(4);
  target.rotation = RotationSector::BR;
  target.instant_hit = true;

  int position = 0, found = -1;
  for_each_attrs([&](const StateAttributes& a) {
    if (a == target) found = position;
    ++position;
  });
  CHECK(found == 701);
  CHECK(encode(target).index() == 701);

  // From a raw observation: fast motion only classifies as stationary under
  // a dead zone wider than the speed.
  CombatObservation obs;
  obs.distance = 1000;
  obs.rel_velocity = {900, 0};
  obs.line_of_sight = {0, 1};
  obs.facing_angle = 150;
  obs.weapon_instant_hit = true;
  CHECK(encode(obs, 1000.0).index() == 701);
}

TEST_CASE("encode is a bijection onto [0, 1296)") {
  std::set<int> seen;
  int position = 0;
  for_each_attrs([&](const StateAttributes& a) {
    auto id = encode(a);
    CHECK(id.index() == position);
    CHECK(decode(id) == a);
    seen.insert(id.index());
    ++position;
  });
  CHECK(position == 1296);
  CHECK(seen.size() == 1296);
  CHECK(position * kActionCount * kCategoryCount == 38880);
}

TEST_CASE("property: distance band is monotone") {
  Rng rng(21);
  for (int i = 0; i < 20000; ++i) {
    double a = rng.uniform(0, 3000), b = rng.uniform(0, 3000);
    if (a > b) std::swap(a, b);
    CHECK(discretize_distance(a) <= discretize_distance(b));
  }
}

TEST_CASE("property: speed band ignores direction") {
  Rng rng(22);
  for (int i = 0; i < 20000; ++i) {
    Vec2 v{rng.uniform(-1200, 1200), rng.uniform(-1200, 1200)};
    // Keep clear of the threshold where rotation rounding could flip it.
    if (std::abs(length(v) - kFastSpeedThreshold) < 1e-6) continue;
    Vec2 r = rotate(v, rng.uniform(0, 360));
    CHECK(discretize_speed(v.x, v.y) == discretize_speed(r.x, r.y));
  }
}

TEST_CASE("property: negated velocity mirrors the direction class") {
  auto flip_r = [](Radial r) { return r == Radial::Towards ? Radial::Away : r == Radial::Away ? Radial::Towards : r; };
  auto flip_t = [](Tangential t) {
    return t == Tangential::Left ? Tangential::Right : t == Tangential::Right ? Tangential::Left : t;
  };
  Rng rng(23);
  for (int i = 0; i < 20000; ++i) {
    Vec2 v{rng.uniform(-400, 400), rng.uniform(-400, 400)};
    Vec2 los = from_heading_deg(rng.uniform(-180, 180));
    auto a = classify_direction(v, los);
    auto b = classify_direction(-v, los);
    // Exactly on the dead-zone edge the sign flip is asymmetric by rounding.
    if (std::abs(std::abs(dot(v, los)) - 50.0) < 1e-9) continue;
    CHECK(b.radial == flip_r(a.radial));
    CHECK(b.tangential == flip_t(a.tangential));
  }
}

TEST_CASE("property: rotation sectors partition the circle") {
  int counts[6] = {};
  // Quarter-degree grid: every sample, boundaries included, is exact in binary.
  const int steps = 360 * 4;
  for (int i = 0; i < steps; ++i) {
    double angle = -180.0 + i * 0.25;
    auto sector = discretize_rotation(angle);
    ++counts[static_cast<int>(sector)];
  }
  for (int c : counts) CHECK(c == steps / 6);
}

TEST_CASE("facing angle") {
  // Opponent at origin looking along +x at a bot on +x: facing it.
  CHECK(facing_angle({0, 0}, 0, {100, 0}) == doctest::Approx(0));
  // Bot on the opponent's right, so the opponent faces 90 degrees to the left of it.
  CHECK(facing_angle({0, 0}, 0, {0, -100}) == doctest::Approx(-90));
  CHECK(facing_angle({0, 0}, 180, {100, 0}) == doctest::Approx(-180));
  CHECK(normalize_angle(540) == doctest::Approx(-180));
  CHECK(normalize_angle(-190) == doctest::Approx(170));
}
