#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "sarsa_arena/weapons.hpp"

using namespace sarsa_arena;

namespace {

std::vector<std::string_view> labels(WeaponCategory c) {
  std::vector<std::string_view> out;
  for (const auto& a : actions_for(c)) out.push_back(label_name(a.label));
  return out;
}

Inventory holding(const Armory& armory, std::initializer_list<const char*> items, int ammo = 10) {
  Inventory inv(armory.items().size());
  for (const char* name : items) inv.give(armory, armory.item_index(name), ammo);
  return inv;
}

const WeaponSpec& spec(const Armory& armory, const char* name) { return armory.weapon(armory.weapon_index(name)); }

}  // namespace

TEST_CASE("action labels per category") {
  using V = std::vector<std::string_view>;
  CHECK(labels(WeaponCategory::InstantHit) == V{"Head", "Mid", "Legs", "Left", "Right"});
  CHECK(labels(WeaponCategory::Projectile) == V{"Player", "Location", "Above", "Above-2", "Above-3"});
  CHECK(labels(WeaponCategory::SlowMoving) == V{"Player", "Left", "Left-2", "Right", "Right-2"});
}

TEST_CASE("thirty distinct category-action pairs") {
  std::set<std::pair<int, int>> pairs;
  for (auto c : kAllCategories) {
    auto actions = actions_for(c);
    CHECK(actions.size() == 5);
    for (int i = 0; i < kActionCount; ++i) {
      CHECK(actions[static_cast<std::size_t>(i)].index == i);
      CHECK(actions[static_cast<std::size_t>(i)].category == c);
      pairs.insert({category_index(c), i});
    }
  }
  CHECK(pairs.size() == 30);
}

TEST_CASE("default armory") {
  auto armory = default_armory();
  CHECK(armory.weapons().size() == 11);
  CHECK(spec(armory, "shock_rifle").damage_per_hit == 45);
  CHECK(spec(armory, "shock_rifle").category == WeaponCategory::InstantHit);
  CHECK(spec(armory, "rocket_launcher").projectile_speed == 1000);
  CHECK(spec(armory, "rocket_launcher").splash_radius == 150);
  CHECK(spec(armory, "rocket_launcher").self_damage);
  CHECK(spec(armory, "rocket_launcher").aim_skew == 60);
  CHECK(spec(armory, "flak_primary").pellets == 9);
  CHECK(spec(armory, "shield_gun").range == 120);
  CHECK(armory.item_of(armory.weapon_index("flak_primary")) == armory.item_of(armory.weapon_index("flak_secondary")));
  for (const auto& w : armory.weapons()) {
    CHECK(w.damage_per_hit > 0);
    CHECK(w.fire_interval > 0);
    CHECK(w.above_step == 120);
  }
  CHECK_NOTHROW(default_priority_tables().validate(armory));
}

TEST_CASE("armory validation") {
  auto armory = default_armory();
  auto weapons = armory.weapons();
  weapons[0].damage_per_hit = 0;
  CHECK_THROWS_AS(Armory(weapons, armory.items()), std::invalid_argument);
  weapons = armory.weapons();
  weapons[0].item = "nothing";
  CHECK_THROWS_AS(Armory(weapons, armory.items()), std::invalid_argument);
  weapons = armory.weapons();
  weapons.push_back(weapons[0]);
  CHECK_THROWS_AS(Armory(weapons, armory.items()), std::invalid_argument);

  auto tables = default_priority_tables();
  tables.far.clear();
  CHECK_THROWS_AS(tables.validate(armory), std::invalid_argument);
  tables = default_priority_tables();
  tables.close.push_back("bfg");
  CHECK_THROWS_AS(tables.validate(armory), std::invalid_argument);
}

TEST_CASE("head, mid and legs heights") {
  auto armory = default_armory();
  const auto& w = spec(armory, "shock_rifle");
  auto act = actions_for(WeaponCategory::InstantHit);
  Vec3 shooter{0, 0, 0}, opp{100, 200, 0};
  auto head = resolve_aim(act[0], shooter, opp, w);
  CHECK(head.mode == TrackingMode::FixedPoint);
  CHECK(head.point == Vec3{100, 200, 39});
  CHECK(resolve_aim(act[1], shooter, opp, w).point == Vec3{100, 200, 19.5});
  CHECK(resolve_aim(act[2], shooter, opp, w).point == Vec3{100, 200, 4});
  CHECK(resolve_aim(act[0], shooter, {100, 200, 30}, w).point.z == 69);
}

TEST_CASE("player action locks on") {
  auto armory = default_armory();
  auto act = actions_for(WeaponCategory::Projectile);
  CHECK(resolve_aim(act[0], {}, {500, 0, 0}, spec(armory, "bio_rifle")).mode == TrackingMode::LockedOn);
  CHECK(resolve_aim(act[1], {}, {500, 0, 0}, spec(armory, "bio_rifle")).mode == TrackingMode::FixedPoint);
}

TEST_CASE("left skews to the shooter's left") {
  auto armory = default_armory();
  const auto& w = spec(armory, "shock_rifle");
  auto act = actions_for(WeaponCategory::InstantHit);
  // Shooting along +x, the shooter's left is +y.
  auto left = resolve_aim(act[3], {0, 0, 0}, {400, 0, 0}, w);
  CHECK(left.point.x == doctest::Approx(400));
  CHECK(left.point.y == doctest::Approx(25));
  CHECK(left.point.z == doctest::Approx(19.5));
  auto right = resolve_aim(act[4], {0, 0, 0}, {400, 0, 0}, w);
  CHECK(right.point.y == doctest::Approx(-25));
}

TEST_CASE("property: left and right mirror across the line of fire") {
  auto armory = default_armory();
  Rng rng(31);
  for (auto cat : {WeaponCategory::InstantHit, WeaponCategory::SlowMoving}) {
    const auto& w = cat == WeaponCategory::SlowMoving ? spec(armory, "rocket_launcher") : spec(armory, "shock_rifle");
    auto act = actions_for(cat);
    auto find = [&](AimLabel l) {
      for (const auto& a : act) {
        if (a.label == l) return a;
      }
      FAIL("label missing");
      return act[0];
    };
    for (int i = 0; i < 500; ++i) {
      Vec3 shooter{rng.uniform(-2000, 2000), rng.uniform(-2000, 2000), 0};
      Vec3 opp{rng.uniform(-2000, 2000), rng.uniform(-2000, 2000), rng.uniform(0, 50)};
      Vec2 axis = normalized(opp.xy() - shooter.xy());
      std::vector<std::pair<AimLabel, AimLabel>> mirrored{{AimLabel::Left, AimLabel::Right}};
      if (cat == WeaponCategory::SlowMoving) mirrored.push_back({AimLabel::Left2, AimLabel::Right2});
      for (auto [l, r] : mirrored) {
        auto pl = resolve_aim(find(l), shooter, opp, w).point;
        auto pr = resolve_aim(find(r), shooter, opp, w).point;
        // Mirror pl across the vertical plane through shooter and opponent.
        Vec2 rel = pl.xy() - shooter.xy();
        Vec2 along = axis * dot(rel, axis);
        Vec2 mirror = shooter.xy() + along - (rel - along);
        CHECK(mirror.x == doctest::Approx(pr.x).epsilon(1e-9));
        CHECK(mirror.y == doctest::Approx(pr.y).epsilon(1e-9));
        CHECK(pl.z == pr.z);
        double offset = length(pl.xy() - opp.xy());
        CHECK(offset == doctest::Approx(l == AimLabel::Left ? w.aim_skew : 2 * w.aim_skew));
      }
    }
  }
}

TEST_CASE("above variants climb in order") {
  auto armory = default_armory();
  const auto& w = spec(armory, "flak_secondary");
  auto act = actions_for(WeaponCategory::Projectile);
  Vec3 opp{300, 300, 10};
  double mid = resolve_aim(act[1], {}, opp, w).point.z;
  double a1 = resolve_aim(act[2], {}, opp, w).point.z;
  double a2 = resolve_aim(act[3], {}, opp, w).point.z;
  double a3 = resolve_aim(act[4], {}, opp, w).point.z;
  CHECK(mid < a1);
  CHECK(a1 < a2);
  CHECK(a2 < a3);
  CHECK(a1 - mid == doctest::Approx(120));
  CHECK(a3 - mid == doctest::Approx(360));
}

TEST_CASE("weapon selection") {
  auto armory = default_armory();
  auto tables = default_priority_tables();
  auto idx = [&](const char* n) { return armory.weapon_index(n); };

  auto flak_and_ar = holding(armory, {"flak_cannon", "assault_rifle"});
  CHECK(select_weapon(flak_and_ar, DistanceBand::Close, tables, armory) == idx("flak_primary"));
  CHECK(select_weapon(flak_and_ar, DistanceBand::Medium, tables, armory) == idx("flak_secondary"));

  auto basic = Inventory::loadout(armory);
  for (auto band : {DistanceBand::Close, DistanceBand::Medium, DistanceBand::Far}) {
    CHECK(select_weapon(basic, band, tables, armory) == idx("assault_rifle"));
  }

  // Held but empty is skipped.
  auto dry = holding(armory, {"shock_rifle", "assault_rifle"}, 0);
  dry.add_ammo(armory, armory.item_index("assault_rifle"), 5);
  CHECK(select_weapon(dry, DistanceBand::Medium, tables, armory) == idx("assault_rifle"));

  auto shield_only = holding(armory, {"shield_gun"}, 0);
  CHECK(select_weapon(shield_only, DistanceBand::Far, tables, armory) == idx("shield_gun"));
  CHECK_THROWS_AS(select_weapon(Inventory(armory.items().size()), DistanceBand::Far, tables, armory), std::logic_error);
}

TEST_CASE("property: weapon selection is a function of inventory and band") {
  auto armory = default_armory();
  auto tables = default_priority_tables();
  Rng rng(32);
  for (int i = 0; i < 500; ++i) {
    Inventory inv = Inventory::loadout(armory);
    for (std::size_t it = 0; it < armory.items().size(); ++it) {
      if (rng.chance(0.4)) inv.give(armory, static_cast<int>(it), rng.below(3));
    }
    auto band = static_cast<DistanceBand>(rng.below(3));
    int w = select_weapon(inv, band, tables, armory);
    CHECK(select_weapon(inv, band, tables, armory) == w);
    CHECK(inv.usable(armory, armory.item_of(w)));
  }
}

TEST_CASE("inventory ammo") {
  auto armory = default_armory();
  auto inv = Inventory::loadout(armory);
  int ar = armory.item_index("assault_rifle");
  CHECK(inv.ammo(ar) == 100);
  inv.add_ammo(armory, ar, 1000);
  CHECK(inv.ammo(ar) == 200);
  int shield = armory.item_index("shield_gun");
  inv.consume(armory, shield);
  CHECK(inv.usable(armory, shield));
  CHECK_FALSE(inv.empty());
  CHECK(Inventory(armory.items().size()).empty());
}

TEST_CASE("reward from damage") {
  CHECK(reward_for(0) == -1);
  CHECK(reward_for(35) == 35);
  CHECK(reward_for(1e-300) == 1e-300);
  CHECK_THROWS_AS(reward_for(-5), std::invalid_argument);
  Rng rng(33);
  for (int i = 0; i < 1000; ++i) {
    double d = rng.chance(0.2) ? 0.0 : rng.uniform(0, 200);
    CHECK((reward_for(d) >= 0) == (d > 0));
  }
}
