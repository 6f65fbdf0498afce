#include "sarsa_arena/weapons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sarsa_arena {

std::string_view label_name(AimLabel label) {
  switch (label) {
    case AimLabel::Head: return "Head";
    case AimLabel::Mid: return "Mid";
    case AimLabel::Legs: return "Legs";
    case AimLabel::Left: return "Left";
    case AimLabel::Right: return "Right";
    case AimLabel::Player: return "Player";
    case AimLabel::Location: return "Location";
    case AimLabel::Above: return "Above";
    case AimLabel::Above2: return "Above-2";
    case AimLabel::Above3: return "Above-3";
    case AimLabel::Left2: return "Left-2";
    case AimLabel::Right2: return "Right-2";
  }
  return "?";
}

std::array<ShootAction, kActionCount> actions_for(WeaponCategory category) {
  using L = AimLabel;
  std::array<L, kActionCount> labels{};
  switch (category) {
    case WeaponCategory::InstantHit: labels = {L::Head, L::Mid, L::Legs, L::Left, L::Right}; break;
    case WeaponCategory::MachineGun: labels = {L::Player, L::Location, L::Head, L::Left, L::Right}; break;
    case WeaponCategory::Projectile: labels = {L::Player, L::Location, L::Above, L::Above2, L::Above3}; break;
    case WeaponCategory::SlowMoving: labels = {L::Player, L::Left, L::Left2, L::Right, L::Right2}; break;
    case WeaponCategory::CloseRange: labels = {L::Head, L::Mid, L::Legs, L::Left, L::Right}; break;
    case WeaponCategory::Other: labels = {L::Head, L::Mid, L::Legs, L::Left, L::Right}; break;
  }
  std::array<ShootAction, kActionCount> out{};
  for (int i = 0; i < kActionCount; ++i) out[i] = {category, i, labels[i]};
  return out;
}

Armory::Armory(std::vector<WeaponSpec> weapons, std::vector<ItemSpec> items)
    : weapons_(std::move(weapons)), items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (items_[i].name == items_[j].name) throw std::invalid_argument("duplicate item " + items_[i].name);
    }
  }
  for (std::size_t i = 0; i < weapons_.size(); ++i) {
    const auto& w = weapons_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (weapons_[j].name == w.name) throw std::invalid_argument("duplicate weapon " + w.name);
    }
    if (!(w.damage_per_hit > 0.0)) throw std::invalid_argument(w.name + ": damage_per_hit must be > 0");
    if (!(w.fire_interval > 0.0)) throw std::invalid_argument(w.name + ": fire_interval must be > 0");
    if (!(w.splash_radius >= 0.0)) throw std::invalid_argument(w.name + ": splash_radius must be >= 0");
    if (w.pellets < 1) throw std::invalid_argument(w.name + ": pellets must be >= 1");
    if (!w.instant_hit && !(w.projectile_speed > 0.0 && std::isfinite(w.projectile_speed))) {
      throw std::invalid_argument(w.name + ": projectile weapons need a finite positive speed");
    }
    int item = item_index(w.item);
    if (item < 0) throw std::invalid_argument(w.name + ": unknown item " + w.item);
    weapon_items_.push_back(item);
  }
}

int Armory::weapon_index(std::string_view name) const {
  for (std::size_t i = 0; i < weapons_.size(); ++i) {
    if (weapons_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int Armory::item_index(std::string_view name) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Armory default_armory() {
  constexpr double kInstant = std::numeric_limits<double>::infinity();
  using C = WeaponCategory;
  auto hitscan = [&](std::string name, std::string item, C cat, double dmg, double interval) {
    WeaponSpec w;
    w.name = std::move(name);
    w.item = std::move(item);
    w.category = cat;
    w.instant_hit = true;
    w.damage_per_hit = dmg;
    w.fire_interval = interval;
    w.projectile_speed = kInstant;
    return w;
  };
  auto projectile = [&](std::string name, std::string item, C cat, double dmg, double interval, double speed,
                        double splash) {
    WeaponSpec w;
    w.name = std::move(name);
    w.item = std::move(item);
    w.category = cat;
    w.instant_hit = false;
    w.damage_per_hit = dmg;
    w.fire_interval = interval;
    w.projectile_speed = speed;
    w.splash_radius = splash;
    w.self_damage = splash > 0.0;
    return w;
  };

  std::vector<WeaponSpec> w;
  w.push_back(hitscan("assault_rifle", "assault_rifle", C::MachineGun, 7, 0.11));
  w.push_back(hitscan("mini_gun", "mini_gun", C::MachineGun, 8, 0.10));
  w.push_back(hitscan("shock_rifle", "shock_rifle", C::InstantHit, 45, 0.6));
  w.push_back(hitscan("lightning_gun", "lightning_gun", C::InstantHit, 70, 1.2));
  w.push_back(hitscan("sniper_rifle", "sniper_rifle", C::InstantHit, 60, 1.1));
  w.push_back(projectile("bio_rifle", "bio_rifle", C::Projectile, 25, 0.4, 1300, 60));
  w.push_back(projectile("flak_secondary", "flak_cannon", C::Projectile, 50, 0.9, 1200, 120));
  w.push_back(projectile("rocket_launcher", "rocket_launcher", C::SlowMoving, 60, 0.95, 1000, 150));
  w.push_back(projectile("link_gun", "link_gun", C::SlowMoving, 20, 0.25, 1200, 0));
  w.push_back(hitscan("flak_primary", "flak_cannon", C::CloseRange, 12, 0.9));
  w.push_back(hitscan("shield_gun", "shield_gun", C::CloseRange, 25, 0.8));
  for (auto& spec : w) {
    if (spec.category == C::SlowMoving) spec.aim_skew = 60.0;
  }
  auto& flak = w[9];
  flak.pellets = 9;
  flak.spread_deg = 6.0;
  flak.range = 1500.0;
  w[10].range = 120.0;
  w[0].range = 1500.0;
  w[1].range = 1500.0;

  std::vector<ItemSpec> items{
      {"assault_rifle", true, false, 100, 200, 50, 50},
      {"shield_gun", true, true, 0, 0, 0, 0},
      {"mini_gun", false, false, 0, 300, 100, 50},
      {"shock_rifle", false, false, 0, 50, 20, 10},
      {"lightning_gun", false, false, 0, 40, 15, 10},
      {"sniper_rifle", false, false, 0, 40, 15, 10},
      {"bio_rifle", false, false, 0, 50, 20, 10},
      {"flak_cannon", false, false, 0, 35, 15, 10},
      {"rocket_launcher", false, false, 0, 30, 12, 9},
      {"link_gun", false, false, 0, 220, 60, 50},
  };
  return Armory(std::move(w), std::move(items));
}

Inventory Inventory::loadout(const Armory& armory) {
  Inventory inv(armory.items().size());
  for (std::size_t i = 0; i < armory.items().size(); ++i) {
    const auto& it = armory.items()[i];
    if (it.spawn_with) {
      inv.held_[i] = true;
      inv.ammo_[i] = it.initial_ammo;
    }
  }
  return inv;
}

bool Inventory::usable(const Armory& armory, int item) const {
  if (!holds(item)) return false;
  return armory.item(item).infinite_ammo || ammo(item) > 0;
}

void Inventory::give(const Armory& armory, int item, int amount) {
  held_.at(static_cast<std::size_t>(item)) = true;
  add_ammo(armory, item, amount);
}

void Inventory::add_ammo(const Armory& armory, int item, int amount) {
  auto& a = ammo_.at(static_cast<std::size_t>(item));
  a = std::min(a + amount, armory.item(item).max_ammo);
}

void Inventory::consume(const Armory& armory, int item) {
  if (armory.item(item).infinite_ammo) return;
  auto& a = ammo_.at(static_cast<std::size_t>(item));
  if (a > 0) --a;
}

bool Inventory::empty() const { return std::none_of(held_.begin(), held_.end(), [](bool h) { return h; }); }

const std::vector<std::string>& PriorityTables::band(DistanceBand b) const {
  switch (b) {
    case DistanceBand::Close: return close;
    case DistanceBand::Medium: return medium;
    case DistanceBand::Far: return far;
  }
  return far;
}

void PriorityTables::validate(const Armory& armory) const {
  auto check = [&](const std::vector<std::string>& list, const char* which) {
    if (list.empty()) throw std::invalid_argument(std::string("priority list '") + which + "' is empty");
    for (const auto& n : list) {
      if (armory.weapon_index(n) < 0) {
        throw std::invalid_argument(std::string("priority list '") + which + "' names unknown weapon " + n);
      }
    }
  };
  check(close, "close");
  check(medium, "medium");
  check(far, "far");
  check(fallback, "fallback");
}

PriorityTables default_priority_tables() {
  PriorityTables t;
  t.close = {"flak_primary", "shock_rifle", "mini_gun", "link_gun", "assault_rifle", "shield_gun"};
  t.medium = {"shock_rifle", "rocket_launcher", "link_gun", "mini_gun", "flak_secondary", "assault_rifle"};
  t.far = {"lightning_gun", "sniper_rifle", "shock_rifle", "link_gun", "assault_rifle"};
  t.fallback = {"assault_rifle", "shield_gun"};
  return t;
}

int select_weapon(const Inventory& inventory, DistanceBand band, const PriorityTables& tables,
                  const Armory& armory) {
  for (const auto* list : {&tables.band(band), &tables.fallback}) {
    for (const auto& name : *list) {
      int w = armory.weapon_index(name);
      if (w >= 0 && inventory.usable(armory, armory.item_of(w))) return w;
    }
  }
  throw std::logic_error("no usable weapon in inventory");
}

AimResolution resolve_aim(const ShootAction& action, Vec3 shooter, Vec3 opponent, const WeaponSpec& weapon,
                          const BodyDims& body) {
  AimResolution out;
  const double mid = opponent.z + body.height / 2.0;
  Vec2 fire_line = normalized(opponent.xy() - shooter.xy());
  if (fire_line == Vec2{}) fire_line = {1.0, 0.0};
  Vec2 left = left_of(fire_line);
  auto lateral = [&](double amount) { return lift(opponent.xy() + left * amount, mid); };

  switch (action.label) {
    case AimLabel::Player:
      out.mode = TrackingMode::LockedOn;
      out.point = lift(opponent.xy(), mid);
      break;
    case AimLabel::Head: out.point = lift(opponent.xy(), opponent.z + body.height); break;
    case AimLabel::Mid:
    case AimLabel::Location: out.point = lift(opponent.xy(), mid); break;
    case AimLabel::Legs: out.point = lift(opponent.xy(), opponent.z + 4.0); break;
    case AimLabel::Left: out.point = lateral(weapon.aim_skew); break;
    case AimLabel::Right: out.point = lateral(-weapon.aim_skew); break;
    case AimLabel::Left2: out.point = lateral(2.0 * weapon.aim_skew); break;
    case AimLabel::Right2: out.point = lateral(-2.0 * weapon.aim_skew); break;
    case AimLabel::Above: out.point = lift(opponent.xy(), mid + weapon.above_step); break;
    case AimLabel::Above2: out.point = lift(opponent.xy(), mid + 2.0 * weapon.above_step); break;
    case AimLabel::Above3: out.point = lift(opponent.xy(), mid + 3.0 * weapon.above_step); break;
  }
  return out;
}

double reward_for(double damage) {
  if (!(damage >= 0.0) || !std::isfinite(damage)) throw std::invalid_argument("damage must be finite and >= 0");
  return damage > 0.0 ? damage : -1.0;
}

}  // namespace sarsa_arena
