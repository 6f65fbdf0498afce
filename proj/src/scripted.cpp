#include "sarsa_arena/scripted.hpp"

#include <cmath>

namespace sarsa_arena {

namespace {

constexpr double kDodgeSeconds = 0.4;
/// A strafe is planned as a straight run; the ground along it is checked only
/// when it is planned, so circling a target can still carry an agent over an edge.
bool run_is_safe(const World& world, Vec2 from, Vec2 dir, double length) {
  for (double d = 25.0; d <= length + 25.0; d += 25.0) {
    if (world.in_pit(from + dir * d)) return false;
  }
  return true;
}

Vec2 strafe(const World& world, const AgentState& a, ScriptedMemory& m, Vec2 to_target, double period, Rng& rng,
            double dt) {
  m.strafe_timer -= dt;
  Vec2 side = left_of(to_target);
  if (m.strafe_timer <= 0.0) {
    m.strafe_sign = rng.chance(0.5) ? 1.0 : -1.0;
    m.strafe_timer = period * (0.5 + rng.uniform01());
    double run = 1.5 * a.max_speed * m.strafe_timer;
    if (!run_is_safe(world, a.pos, side * m.strafe_sign, run)) {
      m.strafe_sign = -m.strafe_sign;
      if (!run_is_safe(world, a.pos, side * m.strafe_sign, run)) m.strafe_timer = 0.1;
    }
  }
  return side * m.strafe_sign;
}

/// Walks the waypoint graph; faces the last attacker while alerted.
void roam(World& world, AgentState& a, Control& c) {
  Vec2 dir = world.navigate(a);
  c.move = dir * a.max_speed;
  if (a.memory.alert_timer > 0.0) {
    c.face_yaw = a.memory.alert_yaw;
  } else if (dir != Vec2{}) {
    c.face_yaw = heading_deg(dir);
  }
}

}  // namespace

Control scripted_control(World& world, AgentId self) {
  AgentState& a = world.agent(self);
  const OpponentProfile& p = world.config().opponent(a.level);
  const double dt = world.dt();
  Rng& rng = world.rng();
  auto& m = a.memory;
  Control c;

  if (m.target >= 0) {
    const auto& t = world.agent(m.target);
    if (!t.alive || !world.line_of_sight(a.pos, t.pos) ||
        length(t.pos - a.pos) > world.config().physics.sight_range) {
      m.target = -1;
    }
  }
  if (m.target < 0) {
    if (auto t = world.nearest_visible(self, p.fov)) m.target = *t;
  }
  if (m.target < 0) {
    roam(world, a, c);
    return c;
  }

  const auto& t = world.agent(m.target);
  Vec2 to = t.pos - a.pos;
  double dist = length(to);
  const auto& cfg = world.config();
  int weapon = select_weapon(a.inventory, discretize_distance(dist), cfg.priority, cfg.armory);
  const WeaponSpec& spec = cfg.armory.weapon(weapon);
  // Nothing that reaches: go restock instead of staring at the target.
  if (dist > spec.range) {
    roam(world, a, c);
    return c;
  }
  Vec2 dir = dist > 0.0 ? to * (1.0 / dist) : from_heading_deg(a.yaw);
  c.face_yaw = heading_deg(dir);

  Vec2 mv;
  if (p.strafes) mv = strafe(world, a, m, dir, p.strafe_period, rng, dt);
  if (p.closes_distance && dist > p.preferred_distance) mv = mv + dir * 0.5;
  if (p.dodges) {
    m.dodge_timer -= dt;
    if (m.dodge_timer <= 0.0) {
      if (auto proj = world.incoming_projectile(self, p.dodge_radius)) {
        Vec2 v = normalized(proj->vel.xy());
        double side = cross(v, a.pos - proj->pos.xy()) >= 0.0 ? 1.0 : -1.0;
        m.dodge_dir = left_of(v) * side;
        m.dodge_timer = kDodgeSeconds;
        c.jump = true;
      }
    }
    if (m.dodge_timer > 0.0) mv = m.dodge_dir;
  }
  if (p.jump_chance > 0.0 && rng.chance(p.jump_chance * dt)) c.jump = true;
  c.move = normalized(mv) * a.max_speed;

  if (world.ready_to_fire(a)) {
    c.fire.active = true;
    c.fire.weapon = weapon;
    c.fire.mode = TrackingMode::FixedPoint;
    c.fire.point = spec.splash_radius > 0.0 ? t.base() : world.mid(t);
    c.fire.target = m.target;
    c.fire.yaw_error = p.max_aim_error > 0.0 ? rng.uniform(-p.max_aim_error, p.max_aim_error) : 0.0;
  }
  return c;
}

void learner_movement(World& world, AgentId self) {
  AgentState& a = world.agent(self);
  const auto& rl = world.config().rl;
  const double dt = world.dt();
  Rng& rng = world.rng();
  Control& c = a.control;
  c.jump = false;

  const FireOrder& f = c.fire;
  bool engaged = f.active && f.target >= 0 && world.agent(f.target).alive;
  if (!engaged) {
    roam(world, a, c);
  } else {
    Vec2 to = world.agent(f.target).pos - a.pos;
    Vec2 dir = normalized(to);
    if (dir == Vec2{}) dir = from_heading_deg(a.yaw);
    c.face_yaw = heading_deg(dir);
    if (rl.strafes) {
      c.move = strafe(world, a, a.memory, dir, rl.strafe_period, rng, dt) * a.max_speed;
    } else {
      c.move = world.navigate(a) * a.max_speed;
    }
  }
  if (rl.jump_chance > 0.0 && rng.chance(rl.jump_chance * dt)) c.jump = true;
}

}  // namespace sarsa_arena
