#pragma once

#include <cstdint>

#include "sarsa_arena/common.hpp"
#include "sarsa_arena/geometry.hpp"

namespace sarsa_arena {

// Distances in UU (unreal units), speeds in UU/s, angles in degrees.
inline constexpr double kCloseRangeLimit = 510.0;
inline constexpr double kMediumRangeLimit = 1700.0;
inline constexpr double kFastSpeedThreshold = 800.0;
inline constexpr double kDefaultDirectionDeadZone = 50.0;

enum class DistanceBand : std::uint8_t { Close, Medium, Far };
enum class SpeedBand : std::uint8_t { Regular, Fast };
enum class Radial : std::uint8_t { Towards, None, Away };
enum class Tangential : std::uint8_t { Left, None, Right };
enum class RotationSector : std::uint8_t { FR1, FR2, BR, BL, FL2, FL1 };

struct DirectionClass {
  Radial radial = Radial::None;
  Tangential tangential = Tangential::None;

  /// Row-major over radial x tangential, 0..8; (None, None) is 4.
  int ordinal() const { return static_cast<int>(radial) * 3 + static_cast<int>(tangential); }
  static DirectionClass from_ordinal(int ordinal);
  bool stationary() const { return radial == Radial::None && tangential == Tangential::None; }
  bool operator==(const DirectionClass&) const = default;
};

/// What the learner perceives about the opponent it is engaging. Planar only.
struct CombatObservation {
  double distance = 0.0;
  /// Opponent velocity minus the bot's velocity.
  Vec2 rel_velocity;
  /// Unit vector from the bot towards the opponent.
  Vec2 line_of_sight{1.0, 0.0};
  bool opponent_jumping = false;
  /// Opponent facing relative to the opponent->bot line; 0 means facing the
  /// bot, positive turns towards the opponent's right.
  double facing_angle = 0.0;
  bool weapon_instant_hit = false;
};

struct StateAttributes {
  DistanceBand distance = DistanceBand::Close;
  SpeedBand speed = SpeedBand::Regular;
  bool jumping = false;
  DirectionClass direction;
  RotationSector rotation = RotationSector::FR1;
  bool instant_hit = false;
  bool operator==(const StateAttributes&) const = default;
};

/// Close up to and including 510, Medium up to and including 1700, Far beyond.
DistanceBand discretize_distance(double d);
/// Fast iff the planar speed exceeds 800.
SpeedBand discretize_speed(double vx, double vy);
/// Radial/tangential movement of the opponent as seen from the bot. Components
/// whose magnitude is below `dead_zone` classify as None.
DirectionClass classify_direction(Vec2 rel_velocity, Vec2 line_of_sight,
                                  double dead_zone = kDefaultDirectionDeadZone);
/// Six 60-degree sectors starting at FR1 = [0, 60).
RotationSector discretize_rotation(double facing_angle);

StateAttributes discretize(const CombatObservation& obs, double dead_zone = kDefaultDirectionDeadZone);
StateId encode(const StateAttributes& attrs);
StateId encode(const CombatObservation& obs, double dead_zone = kDefaultDirectionDeadZone);
StateAttributes decode(StateId id);

/// Wraps an angle into [-180, 180).
double normalize_angle(double deg);
/// Facing angle of an opponent standing at `opponent` with heading
/// `opponent_yaw`, relative to the line towards `bot`.
double facing_angle(Vec2 opponent, double opponent_yaw, Vec2 bot);

}  // namespace sarsa_arena
