#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sarsa_arena/geometry.hpp"
#include "sarsa_arena/rl_core.hpp"
#include "sarsa_arena/weapons.hpp"

namespace sarsa_arena {

struct PickupSpot {
  std::string item;
  Vec2 pos;
  bool operator==(const PickupSpot&) const = default;
};

/// Flat arena: a width x height box with interior walls and pits.
struct ArenaConfig {
  double width = 4000.0;
  double height = 4000.0;
  std::vector<Segment> walls;
  std::vector<Rect> pits;
  std::vector<Vec2> spawns;
  std::vector<Vec2> waypoints;
  std::vector<PickupSpot> weapon_pickups;
  std::vector<PickupSpot> ammo_pickups;
  double pickup_respawn = 20.0;
  double pickup_radius = 40.0;

  bool operator==(const ArenaConfig&) const = default;
};

ArenaConfig default_arena();

struct PhysicsConfig {
  double tick_hz = 30.0;
  /// Physics ticks between learner decisions (6 -> 5 Hz).
  int decision_ticks = 6;
  double base_speed = 440.0;
  double jump_duration = 0.7;
  double jump_height = 60.0;
  double respawn_delay = 2.0;
  double eye_height = 32.0;
  double body_radius = 17.0;
  double body_height = 39.0;
  double max_health = 100.0;
  double projectile_lifetime = 3.0;
  /// Muzzle offset in front of the shooter, outside its own cylinder.
  double muzzle_offset = 20.0;
  /// Farthest distance at which an opponent can be acquired.
  double sight_range = 2000.0;

  double dt() const { return 1.0 / tick_hz; }
  bool operator==(const PhysicsConfig&) const = default;
};

/// Scripted opponent skill. Angles in degrees; fov is the largest absolute
/// bearing at which a target can be acquired.
struct OpponentProfile {
  int level = 1;
  double speed_fraction = 1.0;
  bool strafes = false;
  bool dodges = false;
  bool closes_distance = false;
  double max_aim_error = 0.0;
  double fov = 90.0;
  double turn_rate = 180.0;
  double dodge_radius = 450.0;
  double preferred_distance = 600.0;
  double strafe_period = 0.8;
  double jump_chance = 0.0;

  bool operator==(const OpponentProfile&) const = default;
};

std::array<OpponentProfile, 3> default_opponents();

/// Body and perception of the learning bot. Its shooting is driven by the
/// learner; movement is scripted.
struct RlAgentConfig {
  double speed_fraction = 1.0;
  double fov = 90.0;
  double turn_rate = 360.0;
  /// Per-shot aim jitter, uniform in +-aim_error on yaw and pitch.
  double aim_error = 1.0;
  /// Locked-on aim trails the target by this many seconds of its motion.
  double tracking_lag = 0.15;
  bool strafes = true;
  double strafe_period = 0.65;
  double jump_chance = 0.0;

  bool operator==(const RlAgentConfig&) const = default;
};

struct HarnessConfig {
  int games = 30;
  double minutes = 3.0;
  /// Multiplies both games and minutes.
  double scale = 1.0;
  int snapshot_every = 50;

  bool operator==(const HarnessConfig&) const = default;
};

struct Config {
  LearnerConfig learner;
  double direction_dead_zone = kDefaultDirectionDeadZone;
  Armory armory = default_armory();
  PriorityTables priority = default_priority_tables();
  ArenaConfig arena = default_arena();
  PhysicsConfig physics;
  std::array<OpponentProfile, 3> opponents = default_opponents();
  RlAgentConfig rl;
  HarnessConfig harness;

  /// Throws std::invalid_argument for levels other than 1, 3 and 5.
  const OpponentProfile& opponent(int level) const;
  /// Cross-field checks (priority names exist, spawns outside pits, ...).
  void validate() const;

  bool operator==(const Config&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `key = value` text with [sections]. Keys override the built-in
/// defaults; unknown sections or keys are errors.
Config parse_config(std::string_view text, std::string_view source = "<config>");
Config load_config(const std::filesystem::path& path);

}  // namespace sarsa_arena
