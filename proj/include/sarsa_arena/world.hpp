#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sarsa_arena/config.hpp"
#include "sarsa_arena/geometry.hpp"
#include "sarsa_arena/weapons.hpp"

namespace sarsa_arena {

using AgentId = int;

enum class ControllerKind : std::uint8_t { Learner, Scripted, Manual };

/// Trigger state for the coming ticks. In LockedOn mode the aim point follows
/// `target` every tick; in FixedPoint mode `point` stays put.
struct FireOrder {
  bool active = false;
  int weapon = -1;
  TrackingMode mode = TrackingMode::FixedPoint;
  Vec3 point;
  AgentId target = -1;
  /// Extra yaw error in degrees applied to the shot (scripted aiming).
  double yaw_error = 0.0;
};

struct Control {
  /// Desired planar velocity in UU/s; clamped to the agent's max speed.
  Vec2 move;
  std::optional<double> face_yaw;
  bool jump = false;
  FireOrder fire;
};

struct ScriptedMemory {
  AgentId target = -1;
  double strafe_sign = 1.0;
  double strafe_timer = 0.0;
  double dodge_timer = 0.0;
  Vec2 dodge_dir;
  double alert_timer = 0.0;
  double alert_yaw = 0.0;
};

struct NavState {
  int goal = -1;
  int next = -1;
  int recheck = 0;
};

/// Per-life shot accounting. A shot is a hit if it damaged someone other
/// than the shooter.
struct ShotLedger {
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double damage_dealt = 0.0;
};

/// Cumulative over the whole game.
struct AgentStats {
  std::uint64_t weapons_collected = 0;
  std::uint64_t ammo_collected = 0;
  double time_moving = 0.0;
  double distance = 0.0;
  /// Seconds with the trigger held, per weapon mode.
  std::vector<double> shoot_time;
};

enum class DeathCause : std::uint8_t { Pit, Damage };

struct AgentState {
  AgentId id = 0;
  ControllerKind controller = ControllerKind::Scripted;
  int level = 0;
  double max_speed = 440.0;
  double turn_rate = 360.0;

  Vec2 pos;
  double z = 0.0;
  Vec2 vel;
  double vz = 0.0;
  double yaw = 0.0;
  double health = 0.0;
  double jump_left = 0.0;
  Inventory inventory;
  int weapon = -1;
  double cooldown = 0.0;

  bool alive = false;
  double respawn_timer = 0.0;
  AgentId last_damager = -1;
  std::uint64_t life_serial = 0;
  std::optional<DeathCause> pending_death;
  AgentId pending_killer = -1;

  Control control;
  ScriptedMemory memory;
  NavState nav;
  ShotLedger ledger;
  AgentStats stats;

  bool jumping() const { return jump_left > 0.0; }
  Vec3 base() const { return {pos.x, pos.y, z}; }
};

struct Projectile {
  AgentId owner = -1;
  std::uint64_t owner_life = 0;
  int weapon = -1;
  Vec3 pos;
  Vec3 vel;
  double age = 0.0;
};

struct DamageEvent {
  AgentId attacker;
  AgentId victim;
  double amount;
};
struct KillEvent {
  AgentId killer;
  AgentId victim;
};
enum class SuicideCause : std::uint8_t { Pit, SelfSplash };
struct SuicideEvent {
  AgentId victim;
  SuicideCause cause;
};
struct PickupEvent {
  AgentId agent;
  int item;
  bool weapon;
};
struct SpawnEvent {
  AgentId agent;
};

struct SimEvent {
  long tick = 0;
  std::variant<DamageEvent, KillEvent, SuicideEvent, PickupEvent, SpawnEvent> kind;
};

/// `tick kind fields...`, one line per event.
std::string format_event(const SimEvent& e, const Armory& armory);

/// Pit entry is a suicide; lethal damage from oneself is a self-splash
/// suicide; anything else is a kill credited to the last damaging attacker.
SimEvent attribute_death(AgentId victim, AgentId last_damage_source, DeathCause cause, long tick);

class RlShooter;

/// Fixed-timestep arena. The tick is the only mutation entry point during a
/// game; the setters exist for building test scenes.
///
/// Holds a reference to the Config it was built from, which must outlive it.
class World {
 public:
  World(const Config& cfg, std::uint64_t seed);

  /// The learner (id 0) plus three scripted opponents of `level`, all
  /// spawning on the first tick.
  static World match(const Config& cfg, int level, std::uint64_t seed);

  /// Adds an agent alive at `pos` with the spawn loadout.
  AgentId add_agent(ControllerKind kind, int level, Vec2 pos, double yaw = 0.0);
  /// Adds a dead agent that spawns on the next tick.
  AgentId add_pending_agent(ControllerKind kind, int level);

  /// Advances one physics step. `learner` drives any Learner-controlled agent.
  std::vector<SimEvent> tick(RlShooter* learner = nullptr);

  const Config& config() const { return *cfg_; }
  double dt() const { return cfg_->physics.dt(); }
  long tick_index() const { return tick_; }
  double time() const { return static_cast<double>(tick_) * dt(); }
  const std::vector<AgentState>& agents() const { return agents_; }
  AgentState& agent(AgentId id) { return agents_.at(static_cast<std::size_t>(id)); }
  const AgentState& agent(AgentId id) const { return agents_.at(static_cast<std::size_t>(id)); }
  const std::vector<Projectile>& projectiles() const { return projectiles_; }
  Rng& rng() { return rng_; }

  // Perception.
  bool line_of_sight(Vec2 a, Vec2 b) const;
  /// Absolute angle in degrees between the agent's heading and the target.
  double bearing(const AgentState& viewer, Vec2 target) const;
  /// Nearest living enemy in line of sight with bearing <= fov; ties go to
  /// the lowest id.
  std::optional<AgentId> nearest_visible(AgentId viewer, double fov) const;
  /// Closest enemy projectile heading for the agent within `radius`.
  std::optional<Projectile> incoming_projectile(AgentId self, double radius) const;
  Vec3 eye(const AgentState& a) const { return {a.pos.x, a.pos.y, a.z + cfg_->physics.eye_height}; }
  Vec3 mid(const AgentState& a) const { return {a.pos.x, a.pos.y, a.z + cfg_->physics.body_height / 2.0}; }
  bool ready_to_fire(const AgentState& a) const { return a.cooldown <= dt() + 1e-12; }

  // Geometry.
  bool position_clear(Vec2 p) const;
  bool in_pit(Vec2 p) const;

  /// First agent hit by a hitscan ray, if no wall or the floor comes first.
  std::optional<AgentId> trace_shot(Vec3 origin, Vec3 dir, double range, AgentId ignore) const;
  /// Resolves one shot from `shooter` along `order` immediately (hitscan
  /// damage or projectile launch), ignoring cooldown and ammo.
  void shoot(AgentId shooter, const FireOrder& order, std::vector<SimEvent>& events);
  /// Detonation of `weapon` at `point`: full damage to `direct_victim` (if
  /// any), linear splash falloff to everyone else in range. Returns whether
  /// anyone other than the owner took damage.
  bool explode(AgentId owner, std::uint64_t owner_life, int weapon, Vec3 point, AgentId direct_victim,
               std::vector<SimEvent>& events);
  /// Ends the agent's current life for shot accounting: its projectiles still
  /// in flight count as misses, and nothing they do later is credited.
  void settle_shots(AgentId id);
  /// Applies capped damage; returns the amount dealt.
  double apply_damage(AgentId attacker, std::uint64_t attacker_life, AgentId victim, double amount,
                      std::vector<SimEvent>& events);

  /// Unit direction along the waypoint graph towards the agent's current
  /// goal, picking a new goal (usually a wanted pickup) on arrival.
  Vec2 navigate(AgentState& a);
  /// Path from a to b stays clear of walls and pits.
  bool clear_path(Vec2 a, Vec2 b, double pit_margin) const;

 private:
  struct PickupState {
    int item = -1;
    bool weapon = false;
    Vec2 pos;
    int node = -1;
    bool available = true;
    double timer = 0.0;
  };

  void build_nav_graph();
  int nearest_reachable_node(Vec2 p) const;
  void choose_goal(AgentState& a);
  void reset_for_spawn(AgentState& a, Vec2 pos);
  Vec2 pick_spawn(AgentId self);
  void move_agent(AgentState& a);
  void process_fire(AgentState& a, std::vector<SimEvent>& events);
  void step_projectiles(std::vector<SimEvent>& events);
  void resolve_shot(AgentId owner, std::uint64_t owner_life, bool hit);

  const Config* cfg_;
  Rng rng_;
  long tick_ = 0;
  std::vector<AgentState> agents_;
  std::vector<Projectile> projectiles_;
  std::vector<PickupState> pickups_;
  std::vector<Segment> solids_;

  std::vector<Vec2> nodes_;
  std::vector<double> node_dist_;
  std::vector<int> node_next_;
};

}  // namespace sarsa_arena
