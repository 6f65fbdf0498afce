#include "sarsa_arena/state_encoder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sarsa_arena {

DirectionClass DirectionClass::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal > 8) throw std::out_of_range("direction ordinal outside [0, 9)");
  return {static_cast<Radial>(ordinal / 3), static_cast<Tangential>(ordinal % 3)};
}

DistanceBand discretize_distance(double d) {
  if (!std::isfinite(d) || d < 0.0) throw std::invalid_argument("distance must be finite and non-negative");
  if (d <= kCloseRangeLimit) return DistanceBand::Close;
  if (d <= kMediumRangeLimit) return DistanceBand::Medium;
  return DistanceBand::Far;
}

SpeedBand discretize_speed(double vx, double vy) {
  if (!std::isfinite(vx) || !std::isfinite(vy)) throw std::invalid_argument("velocity must be finite");
  return std::sqrt(vx * vx + vy * vy) > kFastSpeedThreshold ? SpeedBand::Fast : SpeedBand::Regular;
}

DirectionClass classify_direction(Vec2 rel_velocity, Vec2 line_of_sight, double dead_zone) {
  if (!std::isfinite(rel_velocity.x) || !std::isfinite(rel_velocity.y) || !std::isfinite(line_of_sight.x) ||
      !std::isfinite(line_of_sight.y)) {
    throw std::invalid_argument("direction inputs must be finite");
  }
  Vec2 u = normalized(line_of_sight);
  // Positive radial is away from the bot; positive lateral is the bot's right.
  double radial = dot(rel_velocity, u);
  double lateral = -dot(rel_velocity, left_of(u));
  DirectionClass out;
  if (std::abs(radial) >= dead_zone) out.radial = radial > 0.0 ? Radial::Away : Radial::Towards;
  if (std::abs(lateral) >= dead_zone) out.tangential = lateral > 0.0 ? Tangential::Right : Tangential::Left;
  return out;
}

RotationSector discretize_rotation(double facing_angle) {
  if (!std::isfinite(facing_angle) || facing_angle < -180.0 || facing_angle >= 180.0) {
    throw std::invalid_argument("facing angle outside [-180, 180)");
  }
  if (facing_angle >= 120.0) return RotationSector::BR;
  if (facing_angle >= 60.0) return RotationSector::FR2;
  if (facing_angle >= 0.0) return RotationSector::FR1;
  if (facing_angle >= -60.0) return RotationSector::FL1;
  if (facing_angle >= -120.0) return RotationSector::FL2;
  return RotationSector::BL;
}

StateAttributes discretize(const CombatObservation& obs, double dead_zone) {
  StateAttributes a;
  a.distance = discretize_distance(obs.distance);
  a.speed = discretize_speed(obs.rel_velocity.x, obs.rel_velocity.y);
  a.jumping = obs.opponent_jumping;
  a.direction = classify_direction(obs.rel_velocity, obs.line_of_sight, dead_zone);
  a.rotation = discretize_rotation(obs.facing_angle);
  a.instant_hit = obs.weapon_instant_hit;
  return a;
}

StateId encode(const StateAttributes& attrs) {
  int idx = static_cast<int>(attrs.distance);
  idx = idx * 2 + static_cast<int>(attrs.speed);
  idx = idx * 2 + (attrs.jumping ? 1 : 0);
  idx = idx * 9 + attrs.direction.ordinal();
  idx = idx * 6 + static_cast<int>(attrs.rotation);
  idx = idx * 2 + (attrs.instant_hit ? 1 : 0);
  return StateId(idx);
}

StateId encode(const CombatObservation& obs, double dead_zone) { return encode(discretize(obs, dead_zone)); }

StateAttributes decode(StateId id) {
  int idx = id.index();
  StateAttributes a;
  a.instant_hit = idx % 2 == 1;
  idx /= 2;
  a.rotation = static_cast<RotationSector>(idx % 6);
  idx /= 6;
  a.direction = DirectionClass::from_ordinal(idx % 9);
  idx /= 9;
  a.jumping = idx % 2 == 1;
  idx /= 2;
  a.speed = static_cast<SpeedBand>(idx % 2);
  idx /= 2;
  a.distance = static_cast<DistanceBand>(idx);
  return a;
}

double normalize_angle(double deg) {
  double r = std::fmod(deg + 180.0, 360.0);
  if (r < 0.0) r += 360.0;
  r -= 180.0;
  // fmod can round up to exactly 180 for inputs a hair below it.
  return r >= 180.0 ? -180.0 : r;
}

double facing_angle(Vec2 opponent, double opponent_yaw, Vec2 bot) {
  double to_bot = heading_deg(bot - opponent);
  // Headings grow counter-clockwise, so turning right lowers the heading.
  return normalize_angle(to_bot - opponent_yaw);
}

}  // namespace sarsa_arena
