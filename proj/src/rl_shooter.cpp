#include "sarsa_arena/rl_shooter.hpp"

#include "sarsa_arena/state_encoder.hpp"

namespace sarsa_arena {

CombatObservation observe(const World& world, AgentId self, AgentId opponent, const WeaponSpec& weapon) {
  const auto& bot = world.agent(self);
  const auto& opp = world.agent(opponent);
  CombatObservation obs;
  Vec2 to = opp.pos - bot.pos;
  obs.distance = length(to);
  if (obs.distance > 0.0) obs.line_of_sight = to * (1.0 / obs.distance);
  obs.rel_velocity = opp.vel - bot.vel;
  obs.opponent_jumping = opp.jumping();
  obs.facing_angle = facing_angle(opp.pos, opp.yaw, bot.pos);
  obs.weapon_instant_hit = weapon.instant_hit;
  return obs;
}

RlShooter::RlShooter(TableSet& tables, const Config& cfg, Rng& rng, PolicyMode mode)
    : tables_(&tables), cfg_(&cfg), rng_(&rng), mode_(mode) {}

double RlShooter::epsilon() const {
  switch (mode_) {
    case PolicyMode::Learn: return cfg_->learner.schedule().epsilon_for_lives(lives_);
    case PolicyMode::Greedy: return 0.0;
    case PolicyMode::UniformRandom: return 1.0;
  }
  return 0.0;
}

bool RlShooter::interval_active(const AgentState& a) const {
  return a.ledger.shots > base_shots_ || a.ledger.damage_dealt > base_damage_;
}

void RlShooter::close_interval(const AgentState& a, const std::optional<PairRef>& next) {
  double r = reward_for(a.ledger.damage_dealt - base_damage_);
  life_reward_ += r;
  if (mode_ != PolicyMode::Learn) return;
  StepDiagnostics d = tables_->update(*pending_, r, next, cfg_->learner);
  d.epsilon_used = epsilon();
  last_step_ = d;
  ++life_updates_;
  ++total_updates_;
}

FireOrder RlShooter::decide(const World& world, AgentId self) {
  const auto& a = world.agent(self);
  if (!a.alive) return {};
  auto target = world.nearest_visible(self, cfg_->rl.fov);
  if (!target) return {};

  const auto& opp = world.agent(*target);
  const auto& armory = cfg_->armory;
  double dist = length(opp.pos - a.pos);
  int weapon = select_weapon(a.inventory, discretize_distance(dist), cfg_->priority, armory);
  const auto& spec = armory.weapon(weapon);
  if (dist > spec.range) return {};
  StateId state = encode(observe(world, self, *target, spec), cfg_->direction_dead_zone);
  WeaponCategory cat = spec.category;

  int action = mode_ == PolicyMode::UniformRandom ? rng_->below(kActionCount)
                                                  : select_action((*tables_)[cat], state, epsilon(), *rng_).action;
  ++life_decisions_;

  PairRef next{cat, state, action};
  if (pending_ && interval_active(a)) close_interval(a, next);
  pending_ = next;
  base_shots_ = a.ledger.shots;
  base_damage_ = a.ledger.damage_dealt;

  const auto& shoot = actions_for(cat)[static_cast<std::size_t>(action)];
  AimResolution aim = resolve_aim(shoot, a.base(), opp.base(), spec,
                                  {cfg_->physics.body_radius, cfg_->physics.body_height});
  FireOrder order;
  order.active = true;
  order.weapon = weapon;
  order.mode = aim.mode;
  order.point = aim.point;
  order.target = *target;
  return order;
}

void RlShooter::begin_life() {
  if (mode_ == PolicyMode::Learn) tables_->begin_life();
  pending_.reset();
  base_shots_ = 0;
  base_damage_ = 0.0;
  life_reward_ = 0.0;
  life_decisions_ = 0;
  life_updates_ = 0;
}

LifeStats RlShooter::end_life(const World& world, AgentId self, bool died) {
  const auto& a = world.agent(self);
  if (pending_ && interval_active(a)) close_interval(a, std::nullopt);
  pending_.reset();
  LifeStats s;
  s.shots = a.ledger.shots;
  s.hits = a.ledger.hits;
  s.misses = a.ledger.misses;
  s.damage = a.ledger.damage_dealt;
  s.reward = life_reward_;
  s.decisions = life_decisions_;
  s.updates = life_updates_;
  if (died) ++lives_;
  return s;
}

}  // namespace sarsa_arena
