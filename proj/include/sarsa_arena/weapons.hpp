#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sarsa_arena/common.hpp"
#include "sarsa_arena/geometry.hpp"
#include "sarsa_arena/state_encoder.hpp"

namespace sarsa_arena {

enum class AimLabel : std::uint8_t {
  Head,
  Mid,
  Legs,
  Left,
  Right,
  Player,
  Location,
  Above,
  Above2,
  Above3,
  Left2,
  Right2,
};

std::string_view label_name(AimLabel label);

struct ShootAction {
  WeaponCategory category = WeaponCategory::Other;
  int index = 0;
  AimLabel label = AimLabel::Mid;
  bool operator==(const ShootAction&) const = default;
};

/// The five aim actions of a weapon category, in Q-table action order.
std::array<ShootAction, kActionCount> actions_for(WeaponCategory category);

/// One fire mode. Modes of the same physical weapon share an `item` (and its ammo).
struct WeaponSpec {
  std::string name;
  std::string item;
  WeaponCategory category = WeaponCategory::Other;
  bool instant_hit = true;
  double damage_per_hit = 1.0;
  double fire_interval = 1.0;
  /// Infinite for hitscan modes.
  double projectile_speed = 0.0;
  double splash_radius = 0.0;
  bool self_damage = false;
  double aim_skew = 25.0;
  double above_step = 120.0;
  int pellets = 1;
  double spread_deg = 0.0;
  double range = 10000.0;

  bool operator==(const WeaponSpec&) const = default;
};

struct ItemSpec {
  std::string name;
  bool spawn_with = false;
  bool infinite_ammo = false;
  int initial_ammo = 0;
  int max_ammo = 0;
  /// Ammo granted by the weapon pickup.
  int pickup_ammo = 0;
  /// Ammo granted by an ammo pack.
  int pack_ammo = 0;

  bool operator==(const ItemSpec&) const = default;
};

class Armory {
 public:
  Armory() = default;
  Armory(std::vector<WeaponSpec> weapons, std::vector<ItemSpec> items);

  const std::vector<WeaponSpec>& weapons() const { return weapons_; }
  const std::vector<ItemSpec>& items() const { return items_; }
  const WeaponSpec& weapon(int index) const { return weapons_.at(static_cast<std::size_t>(index)); }
  const ItemSpec& item(int index) const { return items_.at(static_cast<std::size_t>(index)); }
  /// -1 when absent.
  int weapon_index(std::string_view name) const;
  int item_index(std::string_view name) const;
  /// Item index of a weapon mode.
  int item_of(int weapon) const { return weapon_items_.at(static_cast<std::size_t>(weapon)); }

  bool operator==(const Armory& o) const { return weapons_ == o.weapons_ && items_ == o.items_; }

 private:
  std::vector<WeaponSpec> weapons_;
  std::vector<ItemSpec> items_;
  std::vector<int> weapon_items_;
};

Armory default_armory();

/// Held items and their ammo, indexed like Armory::items().
class Inventory {
 public:
  Inventory() = default;
  explicit Inventory(std::size_t item_count) : held_(item_count, false), ammo_(item_count, 0) {}

  /// Spawn loadout: every spawn_with item at its initial ammo.
  static Inventory loadout(const Armory& armory);

  bool holds(int item) const { return held_.at(static_cast<std::size_t>(item)); }
  int ammo(int item) const { return ammo_.at(static_cast<std::size_t>(item)); }
  /// Held with ammo left (infinite-ammo items always qualify).
  bool usable(const Armory& armory, int item) const;
  void give(const Armory& armory, int item, int amount);
  void add_ammo(const Armory& armory, int item, int amount);
  void consume(const Armory& armory, int item);
  bool empty() const;

 private:
  std::vector<bool> held_;
  std::vector<int> ammo_;
};

struct PriorityTables {
  std::vector<std::string> close;
  std::vector<std::string> medium;
  std::vector<std::string> far;
  /// Tried in order once a band's list is exhausted.
  std::vector<std::string> fallback;

  const std::vector<std::string>& band(DistanceBand b) const;
  /// Throws std::invalid_argument on an empty list or an unknown weapon name.
  void validate(const Armory& armory) const;
  bool operator==(const PriorityTables&) const = default;
};

PriorityTables default_priority_tables();

/// Best usable weapon for the distance band. Throws std::logic_error if not
/// even a fallback weapon is usable.
int select_weapon(const Inventory& inventory, DistanceBand band, const PriorityTables& tables,
                  const Armory& armory);

enum class TrackingMode : std::uint8_t { FixedPoint, LockedOn };

struct AimResolution {
  TrackingMode mode = TrackingMode::FixedPoint;
  /// Meaningless in LockedOn mode.
  Vec3 point;
};

struct BodyDims {
  double radius = 17.0;
  double height = 39.0;
};

/// Aim point for an action. Positions are ground-contact points; heights are
/// measured up from the opponent's base.
AimResolution resolve_aim(const ShootAction& action, Vec3 shooter, Vec3 opponent, const WeaponSpec& weapon,
                          const BodyDims& body = {});

/// Damage dealt by the shooting action, or -1 when it dealt none.
double reward_for(double damage);

}  // namespace sarsa_arena
