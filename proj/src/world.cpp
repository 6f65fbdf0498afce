#include "sarsa_arena/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sarsa_arena/rl_shooter.hpp"
#include "sarsa_arena/scripted.hpp"

namespace sarsa_arena {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kNavRecheckTicks = 15;
constexpr double kNodeReached = 25.0;
constexpr double kAlertSeconds = 1.5;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

/// Rotates a unit direction by yaw (about z) and pitch, both in degrees.
Vec3 perturb(Vec3 dir, double yaw, double pitch) {
  if (yaw == 0.0 && pitch == 0.0) return dir;
  double h = std::atan2(dir.y, dir.x) + deg_to_rad(yaw);
  double el = std::asin(std::clamp(dir.z, -1.0, 1.0)) + deg_to_rad(pitch);
  el = std::clamp(el, -kPi / 2.0, kPi / 2.0);
  return {std::cos(el) * std::cos(h), std::cos(el) * std::sin(h), std::sin(el)};
}

double turn_towards(double from, double to, double max_step) {
  double diff = normalize_angle(to - from);
  if (std::abs(diff) <= max_step) return normalize_angle(to);
  return normalize_angle(from + (diff > 0 ? max_step : -max_step));
}

}  // namespace

std::string format_event(const SimEvent& e, const Armory& armory) {
  std::ostringstream out;
  out << e.tick << ' ';
  std::visit(Overload{
                 [&](const DamageEvent& d) { out << "damage " << d.attacker << ' ' << d.victim << ' ' << d.amount; },
                 [&](const KillEvent& k) { out << "kill " << k.killer << ' ' << k.victim; },
                 [&](const SuicideEvent& s) {
                   out << "suicide " << s.victim << ' ' << (s.cause == SuicideCause::Pit ? "pit" : "self-splash");
                 },
                 [&](const PickupEvent& p) {
                   out << "pickup " << p.agent << ' ' << (p.weapon ? "weapon " : "ammo ") << armory.item(p.item).name;
                 },
                 [&](const SpawnEvent& s) { out << "spawn " << s.agent; },
             },
             e.kind);
  return out.str();
}

SimEvent attribute_death(AgentId victim, AgentId last_damage_source, DeathCause cause, long tick) {
  SimEvent e;
  e.tick = tick;
  if (cause == DeathCause::Pit) {
    e.kind = SuicideEvent{victim, SuicideCause::Pit};
  } else if (last_damage_source == victim || last_damage_source < 0) {
    e.kind = SuicideEvent{victim, SuicideCause::SelfSplash};
  } else {
    e.kind = KillEvent{last_damage_source, victim};
  }
  return e;
}

World::World(const Config& cfg, std::uint64_t seed) : cfg_(&cfg), rng_(seed) {
  const auto& arena = cfg.arena;
  solids_ = arena.walls;
  Vec2 c00{0, 0}, c10{arena.width, 0}, c11{arena.width, arena.height}, c01{0, arena.height};
  solids_.push_back({c00, c10});
  solids_.push_back({c10, c11});
  solids_.push_back({c11, c01});
  solids_.push_back({c01, c00});
  build_nav_graph();

  auto add_pickups = [&](const std::vector<PickupSpot>& spots, bool weapon) {
    for (const auto& s : spots) {
      PickupState p;
      p.item = cfg.armory.item_index(s.item);
      if (p.item < 0) throw std::invalid_argument("pickup names unknown item " + s.item);
      p.weapon = weapon;
      p.pos = s.pos;
      double best = kInf;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        double d = length(nodes_[i] - s.pos);
        if (d < best) {
          best = d;
          p.node = static_cast<int>(i);
        }
      }
      pickups_.push_back(p);
    }
  };
  add_pickups(arena.weapon_pickups, true);
  add_pickups(arena.ammo_pickups, false);
}

World World::match(const Config& cfg, int level, std::uint64_t seed) {
  (void)cfg.opponent(level);
  World w(cfg, seed);
  w.add_pending_agent(ControllerKind::Learner, 0);
  for (int i = 0; i < 3; ++i) w.add_pending_agent(ControllerKind::Scripted, level);
  return w;
}

AgentId World::add_pending_agent(ControllerKind kind, int level) {
  AgentState a;
  a.id = static_cast<AgentId>(agents_.size());
  a.controller = kind;
  a.level = level;
  const auto& ph = cfg_->physics;
  if (kind == ControllerKind::Scripted) {
    const auto& p = cfg_->opponent(level);
    a.max_speed = ph.base_speed * p.speed_fraction;
    a.turn_rate = p.turn_rate;
  } else {
    a.max_speed = ph.base_speed * cfg_->rl.speed_fraction;
    a.turn_rate = cfg_->rl.turn_rate;
  }
  a.stats.shoot_time.assign(cfg_->armory.weapons().size(), 0.0);
  a.inventory = Inventory(cfg_->armory.items().size());
  agents_.push_back(std::move(a));
  return agents_.back().id;
}

AgentId World::add_agent(ControllerKind kind, int level, Vec2 pos, double yaw) {
  AgentId id = add_pending_agent(kind, level);
  reset_for_spawn(agent(id), pos);
  agent(id).yaw = normalize_angle(yaw);
  return id;
}

void World::reset_for_spawn(AgentState& a, Vec2 pos) {
  a.pos = pos;
  a.z = 0.0;
  a.vel = {};
  a.vz = 0.0;
  a.jump_left = 0.0;
  a.health = cfg_->physics.max_health;
  a.inventory = Inventory::loadout(cfg_->armory);
  a.weapon = -1;
  for (const auto& name : cfg_->priority.fallback) {
    int w = cfg_->armory.weapon_index(name);
    if (w >= 0 && a.inventory.usable(cfg_->armory, cfg_->armory.item_of(w))) {
      a.weapon = w;
      break;
    }
  }
  a.cooldown = 0.0;
  a.alive = true;
  a.respawn_timer = 0.0;
  a.last_damager = -1;
  ++a.life_serial;
  a.pending_death.reset();
  a.pending_killer = -1;
  a.control = {};
  a.memory = {};
  a.nav = {};
  a.ledger = {};
}

Vec2 World::pick_spawn(AgentId self) {
  const auto& spawns = cfg_->arena.spawns;
  const double clearance = 2.0 * cfg_->physics.body_radius;
  struct Candidate {
    double score;
    std::size_t index;
  };
  std::vector<Candidate> free, all;
  for (std::size_t i = 0; i < spawns.size(); ++i) {
    double nearest = kInf;
    for (const auto& o : agents_) {
      if (o.id == self || !o.alive) continue;
      nearest = std::min(nearest, length(o.pos - spawns[i]));
    }
    all.push_back({nearest, i});
    if (nearest > clearance) free.push_back({nearest, i});
  }
  auto& pool = free.empty() ? all : free;
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  std::size_t k = std::min<std::size_t>(2, pool.size());
  return spawns[pool[static_cast<std::size_t>(rng_.below(static_cast<int>(k)))].index];
}

bool World::line_of_sight(Vec2 a, Vec2 b) const {
  Segment s{a, b};
  for (const auto& w : cfg_->arena.walls) {
    if (segments_intersect(s, w)) return false;
  }
  return true;
}

double World::bearing(const AgentState& viewer, Vec2 target) const {
  Vec2 d = target - viewer.pos;
  if (d == Vec2{}) return 0.0;
  return std::abs(normalize_angle(heading_deg(d) - viewer.yaw));
}

std::optional<AgentId> World::nearest_visible(AgentId viewer, double fov) const {
  const auto& v = agent(viewer);
  std::optional<AgentId> best;
  double best_d = kInf;
  for (const auto& o : agents_) {
    if (o.id == viewer || !o.alive) continue;
    double d = length(o.pos - v.pos);
    if (d >= best_d || d > cfg_->physics.sight_range) continue;
    if (bearing(v, o.pos) > fov) continue;
    if (!line_of_sight(v.pos, o.pos)) continue;
    best = o.id;
    best_d = d;
  }
  return best;
}

std::optional<Projectile> World::incoming_projectile(AgentId self, double radius) const {
  const auto& a = agent(self);
  std::optional<Projectile> best;
  double best_d = kInf;
  for (const auto& p : projectiles_) {
    if (p.owner == self) continue;
    Vec2 to = a.pos - p.pos.xy();
    double d = length(to);
    if (d > radius || d >= best_d) continue;
    Vec2 v = p.vel.xy();
    if (dot(v, to) <= 0.0) continue;
    double miss = std::abs(cross(normalized(v), to));
    if (miss > 4.0 * cfg_->physics.body_radius + cfg_->armory.weapon(p.weapon).splash_radius) continue;
    best = p;
    best_d = d;
  }
  return best;
}

bool World::in_pit(Vec2 p) const {
  return std::any_of(cfg_->arena.pits.begin(), cfg_->arena.pits.end(), [&](const Rect& r) { return r.contains(p); });
}

bool World::position_clear(Vec2 p) const {
  const double r = cfg_->physics.body_radius;
  if (p.x < r || p.y < r || p.x > cfg_->arena.width - r || p.y > cfg_->arena.height - r) return false;
  for (const auto& w : cfg_->arena.walls) {
    if (distance_to_segment(p, w) < r) return false;
  }
  return true;
}

bool World::clear_path(Vec2 a, Vec2 b, double pit_margin) const {
  Segment s{a, b};
  const double r = cfg_->physics.body_radius + 2.0;
  for (const auto& w : cfg_->arena.walls) {
    if (segment_distance(s, w) < r) return false;
  }
  for (const auto& pit : cfg_->arena.pits) {
    if (segment_crosses_rect(s, pit.inflated(pit_margin))) return false;
  }
  return true;
}

void World::build_nav_graph() {
  nodes_ = cfg_->arena.waypoints;
  const std::size_t n = nodes_.size();
  const double margin = cfg_->physics.body_radius + 15.0;
  node_dist_.assign(n * n, kInf);
  node_next_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    node_dist_[i * n + i] = 0.0;
    node_next_[i * n + i] = static_cast<int>(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!clear_path(nodes_[i], nodes_[j], margin)) continue;
      double d = length(nodes_[i] - nodes_[j]);
      node_dist_[i * n + j] = node_dist_[j * n + i] = d;
      node_next_[i * n + j] = static_cast<int>(j);
      node_next_[j * n + i] = static_cast<int>(i);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double via = node_dist_[i * n + k] + node_dist_[k * n + j];
        if (via < node_dist_[i * n + j]) {
          node_dist_[i * n + j] = via;
          node_next_[i * n + j] = node_next_[i * n + k];
        }
      }
    }
  }
}

int World::nearest_reachable_node(Vec2 p) const {
  const double margins[] = {cfg_->physics.body_radius + 15.0, 0.0};
  for (double m : margins) {
    int best = -1;
    double best_d = kInf;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      double d = length(nodes_[i] - p);
      if (d < best_d && clear_path(p, nodes_[i], m)) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) return best;
  }
  int best = -1;
  double best_d = kInf;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double d = length(nodes_[i] - p);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void World::choose_goal(AgentState& a) {
  const std::size_t n = nodes_.size();
  const int from = a.nav.next >= 0 ? a.nav.next : nearest_reachable_node(a.pos);
  if (n == 0 || from < 0) {
    a.nav.goal = -1;
    return;
  }
  const auto& armory = cfg_->armory;
  int best = -1;
  double best_d = kInf;
  if (rng_.chance(0.75)) {
    for (const auto& p : pickups_) {
      if (!p.available || p.node < 0) continue;
      const auto& item = armory.item(p.item);
      bool wanted = p.weapon ? (!a.inventory.holds(p.item) || a.inventory.ammo(p.item) < item.max_ammo / 2)
                             : (a.inventory.holds(p.item) && !item.infinite_ammo &&
                                a.inventory.ammo(p.item) < item.max_ammo / 2);
      if (!wanted) continue;
      double d = node_dist_[static_cast<std::size_t>(from) * n + static_cast<std::size_t>(p.node)];
      if (d < best_d && p.node != from) {
        best_d = d;
        best = p.node;
      }
    }
  }
  if (best < 0) {
    best = rng_.below(static_cast<int>(n));
    if (best == from && n > 1) best = (best + 1 + rng_.below(static_cast<int>(n) - 1)) % static_cast<int>(n);
  }
  a.nav.goal = best;
}

Vec2 World::navigate(AgentState& a) {
  if (nodes_.empty()) return {};
  const std::size_t n = nodes_.size();
  auto& nav = a.nav;
  if (nav.next < 0 || --nav.recheck <= 0) {
    if (nav.next < 0 || !clear_path(a.pos, nodes_[static_cast<std::size_t>(nav.next)], 0.0)) {
      nav.next = nearest_reachable_node(a.pos);
    }
    nav.recheck = kNavRecheckTicks;
  }
  if (nav.goal < 0) choose_goal(a);
  if (length(nodes_[static_cast<std::size_t>(nav.next)] - a.pos) < kNodeReached) {
    if (nav.next == nav.goal) choose_goal(a);
    if (nav.goal >= 0) {
      int hop = node_next_[static_cast<std::size_t>(nav.next) * n + static_cast<std::size_t>(nav.goal)];
      if (hop < 0) {
        choose_goal(a);
      } else {
        nav.next = hop;
      }
    }
  }
  return normalized(nodes_[static_cast<std::size_t>(nav.next)] - a.pos);
}

std::optional<AgentId> World::trace_shot(Vec3 origin, Vec3 dir, double range, AgentId ignore) const {
  double limit = range;
  Vec2 d2 = dir.xy();
  for (const auto& w : solids_) {
    if (auto t = ray_hits_segment(origin.xy(), d2, w)) limit = std::min(limit, *t);
  }
  if (dir.z < 0.0) limit = std::min(limit, -origin.z / dir.z);
  std::optional<AgentId> hit;
  for (const auto& o : agents_) {
    if (o.id == ignore || !o.alive) continue;
    Cylinder c{o.base(), cfg_->physics.body_radius, cfg_->physics.body_height};
    if (auto t = ray_hits_cylinder(origin, dir, c, limit)) {
      if (*t < limit) {
        limit = *t;
        hit = o.id;
      }
    }
  }
  return hit;
}

double World::apply_damage(AgentId attacker, std::uint64_t attacker_life, AgentId victim, double amount,
                           std::vector<SimEvent>& events) {
  auto& v = agent(victim);
  if (!v.alive || amount <= 0.0) return 0.0;
  double dealt = std::min(amount, v.health);
  v.health -= dealt;
  events.push_back({tick_, DamageEvent{attacker, victim, dealt}});
  v.last_damager = attacker;
  if (attacker != victim) {
    auto& a = agent(attacker);
    if (a.life_serial == attacker_life) a.ledger.damage_dealt += dealt;
    if (a.pos != v.pos) {
      v.memory.alert_timer = kAlertSeconds;
      v.memory.alert_yaw = heading_deg(a.pos - v.pos);
    }
  }
  if (v.health <= 0.0) {
    v.health = 0.0;
    v.alive = false;
    v.pending_death = DeathCause::Damage;
    v.pending_killer = attacker;
  }
  return dealt;
}

bool World::explode(AgentId owner, std::uint64_t owner_life, int weapon, Vec3 point, AgentId direct_victim,
                    std::vector<SimEvent>& events) {
  const auto& spec = cfg_->armory.weapon(weapon);
  bool hit = false;
  if (direct_victim >= 0) {
    if (apply_damage(owner, owner_life, direct_victim, spec.damage_per_hit, events) > 0.0 && direct_victim != owner) {
      hit = true;
    }
  }
  if (spec.splash_radius <= 0.0) return hit;
  const double r = cfg_->physics.body_radius;
  const double h = cfg_->physics.body_height;
  for (auto& o : agents_) {
    if (o.id == direct_victim || !o.alive) continue;
    if (o.id == owner && !spec.self_damage) continue;
    double planar = std::max(0.0, length(point.xy() - o.pos) - r);
    double vertical = point.z < o.z ? o.z - point.z : (point.z > o.z + h ? point.z - (o.z + h) : 0.0);
    double d = std::hypot(planar, vertical);
    if (d >= spec.splash_radius) continue;
    if (!line_of_sight(point.xy(), o.pos)) continue;
    double dmg = spec.damage_per_hit * (1.0 - d / spec.splash_radius);
    if (apply_damage(owner, owner_life, o.id, dmg, events) > 0.0 && o.id != owner) hit = true;
  }
  return hit;
}

void World::resolve_shot(AgentId owner, std::uint64_t owner_life, bool hit) {
  auto& a = agent(owner);
  if (a.life_serial != owner_life) return;
  if (hit) {
    ++a.ledger.hits;
  } else {
    ++a.ledger.misses;
  }
}

void World::settle_shots(AgentId id) {
  auto& a = agent(id);
  for (const auto& p : projectiles_) {
    if (p.owner == id && p.owner_life == a.life_serial) ++a.ledger.misses;
  }
  ++a.life_serial;
}

void World::shoot(AgentId shooter, const FireOrder& order, std::vector<SimEvent>& events) {
  auto& a = agent(shooter);
  const auto& spec = cfg_->armory.weapon(order.weapon);
  Vec3 aim = order.point;
  if (order.mode == TrackingMode::LockedOn && order.target >= 0) {
    const auto& t = agent(order.target);
    aim = mid(t) - lift(t.vel, t.vz) * cfg_->rl.tracking_lag;
  }
  Vec3 origin = eye(a);
  Vec3 dir = normalized(aim - origin);
  if (dir == Vec3{}) dir = lift(from_heading_deg(a.yaw), 0.0);

  double yaw_err = order.yaw_error;
  double pitch_err = 0.0;
  if (a.controller == ControllerKind::Learner && cfg_->rl.aim_error > 0.0) {
    yaw_err += rng_.uniform(-cfg_->rl.aim_error, cfg_->rl.aim_error);
    pitch_err += rng_.uniform(-cfg_->rl.aim_error, cfg_->rl.aim_error);
  }
  dir = perturb(dir, yaw_err, pitch_err);
  ++a.ledger.shots;

  if (spec.instant_hit) {
    bool hit = false;
    for (int p = 0; p < spec.pellets; ++p) {
      Vec3 d = dir;
      if (spec.spread_deg > 0.0) {
        d = perturb(dir, rng_.uniform(-spec.spread_deg, spec.spread_deg), rng_.uniform(-spec.spread_deg, spec.spread_deg));
      }
      if (auto victim = trace_shot(origin, d, spec.range, shooter)) {
        if (apply_damage(shooter, a.life_serial, *victim, spec.damage_per_hit, events) > 0.0) hit = true;
      }
    }
    resolve_shot(shooter, a.life_serial, hit);
    return;
  }

  Vec3 muzzle = origin + dir * cfg_->physics.muzzle_offset;
  if (!line_of_sight(origin.xy(), muzzle.xy()) || muzzle.z <= 0.0) {
    resolve_shot(shooter, a.life_serial, explode(shooter, a.life_serial, order.weapon, origin, -1, events));
    return;
  }
  projectiles_.push_back({shooter, a.life_serial, order.weapon, muzzle, dir * spec.projectile_speed, 0.0});
}

void World::process_fire(AgentState& a, std::vector<SimEvent>& events) {
  if (a.cooldown > 0.0) a.cooldown -= dt();
  const FireOrder& f = a.control.fire;
  if (!f.active || f.weapon < 0) return;
  const auto& armory = cfg_->armory;
  const int item = armory.item_of(f.weapon);
  if (!a.inventory.usable(armory, item)) return;
  if (f.target >= 0 && !agent(f.target).alive) return;
  a.weapon = f.weapon;
  a.stats.shoot_time[static_cast<std::size_t>(f.weapon)] += dt();
  if (a.cooldown > 1e-12) return;
  a.cooldown += armory.weapon(f.weapon).fire_interval;
  a.inventory.consume(armory, item);
  shoot(a.id, f, events);
}

void World::step_projectiles(std::vector<SimEvent>& events) {
  std::vector<Projectile> live;
  live.reserve(projectiles_.size());
  // Detonations may spawn nothing new, so iterating a moved-out copy is safe.
  std::vector<Projectile> current = std::move(projectiles_);
  projectiles_.clear();
  for (auto& p : current) {
    p.age += dt();
    Vec3 step = p.vel * dt();
    double len = length(step);
    Vec3 dir = normalized(step);
    double limit = len;
    bool blocked = false;
    for (const auto& w : solids_) {
      if (auto t = ray_hits_segment(p.pos.xy(), dir.xy(), w); t && *t <= limit) {
        limit = *t;
        blocked = true;
      }
    }
    if (dir.z < 0.0) {
      double t = -p.pos.z / dir.z;
      if (t <= limit) {
        limit = t;
        blocked = true;
      }
    }
    AgentId victim = -1;
    for (const auto& o : agents_) {
      if (o.id == p.owner || !o.alive) continue;
      Cylinder c{o.base(), cfg_->physics.body_radius, cfg_->physics.body_height};
      if (auto t = ray_hits_cylinder(p.pos, dir, c, limit); t && *t <= limit) {
        limit = *t;
        victim = o.id;
      }
    }
    if (victim >= 0 || blocked) {
      Vec3 point = p.pos + dir * limit;
      resolve_shot(p.owner, p.owner_life, explode(p.owner, p.owner_life, p.weapon, point, victim, events));
      continue;
    }
    p.pos = p.pos + step;
    if (p.age >= cfg_->physics.projectile_lifetime) {
      resolve_shot(p.owner, p.owner_life, false);
      continue;
    }
    live.push_back(p);
  }
  projectiles_ = std::move(live);
}

void World::move_agent(AgentState& a) {
  const auto& ph = cfg_->physics;
  const double step_dt = dt();
  if (a.control.face_yaw) a.yaw = turn_towards(a.yaw, *a.control.face_yaw, a.turn_rate * step_dt);

  const double old_z = a.z;
  if (a.control.jump && a.jump_left <= 0.0 && a.z == 0.0) a.jump_left = ph.jump_duration;
  if (a.jump_left > 0.0) {
    a.jump_left -= step_dt;
    if (a.jump_left <= 1e-12) {
      a.jump_left = 0.0;
      a.z = 0.0;
    } else {
      double e = ph.jump_duration - a.jump_left;
      a.z = 4.0 * ph.jump_height * e * (ph.jump_duration - e) / (ph.jump_duration * ph.jump_duration);
    }
  }

  Vec2 desired = a.control.move;
  double speed = length(desired);
  if (speed > a.max_speed) desired = desired * (a.max_speed / speed);
  Vec2 old = a.pos;
  Vec2 target = a.pos + desired * step_dt;
  if (position_clear(target)) {
    a.pos = target;
  } else if (position_clear({target.x, a.pos.y})) {
    a.pos = {target.x, a.pos.y};
  } else if (position_clear({a.pos.x, target.y})) {
    a.pos = {a.pos.x, target.y};
  }
  a.vel = (a.pos - old) * (1.0 / step_dt);
  a.vz = (a.z - old_z) / step_dt;
  double moved = length(a.pos - old);
  a.stats.distance += moved;
  if (moved > 1e-9) a.stats.time_moving += step_dt;

  if (a.z == 0.0 && in_pit(a.pos)) {
    a.health = 0.0;
    a.alive = false;
    a.pending_death = DeathCause::Pit;
    a.pending_killer = a.id;
  }
}

std::vector<SimEvent> World::tick(RlShooter* learner) {
  std::vector<SimEvent> events;
  const double step_dt = dt();

  for (auto& a : agents_) {
    if (!a.alive) continue;
    a.memory.alert_timer -= step_dt;
    switch (a.controller) {
      case ControllerKind::Learner:
        if (learner != nullptr && tick_ % cfg_->physics.decision_ticks == 0) {
          a.control.fire = learner->decide(*this, a.id);
        }
        learner_movement(*this, a.id);
        break;
      case ControllerKind::Scripted:
        a.control = scripted_control(*this, a.id);
        break;
      case ControllerKind::Manual:
        break;
    }
  }

  for (auto& a : agents_) {
    if (a.alive) move_agent(a);
  }
  for (auto& a : agents_) {
    if (a.alive) process_fire(a, events);
  }
  step_projectiles(events);

  for (auto& a : agents_) {
    if (!a.pending_death) continue;
    events.push_back(attribute_death(a.id, a.pending_killer, *a.pending_death, tick_));
    settle_shots(a.id);
    a.pending_death.reset();
    a.respawn_timer = cfg_->physics.respawn_delay;
    a.control = {};
    a.vel = {};
    a.jump_left = 0.0;
    a.z = 0.0;
  }

  const auto& armory = cfg_->armory;
  for (auto& a : agents_) {
    if (!a.alive) continue;
    for (auto& p : pickups_) {
      if (!p.available || length(p.pos - a.pos) > cfg_->arena.pickup_radius) continue;
      const auto& item = armory.item(p.item);
      bool full = a.inventory.ammo(p.item) >= item.max_ammo;
      if (p.weapon) {
        if (a.inventory.holds(p.item) && full) continue;
        a.inventory.give(armory, p.item, item.pickup_ammo);
        ++a.stats.weapons_collected;
      } else {
        if (item.infinite_ammo || full) continue;
        a.inventory.add_ammo(armory, p.item, item.pack_ammo);
        ++a.stats.ammo_collected;
      }
      p.available = false;
      p.timer = cfg_->arena.pickup_respawn;
      events.push_back({tick_, PickupEvent{a.id, p.item, p.weapon}});
    }
  }
  for (auto& p : pickups_) {
    if (p.available) continue;
    p.timer -= step_dt;
    if (p.timer <= 0.0) p.available = true;
  }

  for (auto& a : agents_) {
    if (a.alive) continue;
    a.respawn_timer -= step_dt;
    if (a.respawn_timer > 1e-12) continue;
    Vec2 at = pick_spawn(a.id);
    reset_for_spawn(a, at);
    a.yaw = rng_.uniform(-180.0, 180.0);
    events.push_back({tick_, SpawnEvent{a.id}});
  }

  ++tick_;
  return events;
}

}  // namespace sarsa_arena
