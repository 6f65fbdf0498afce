#pragma once

#include <cstdint>
#include <optional>

#include "sarsa_arena/config.hpp"
#include "sarsa_arena/rl_core.hpp"
#include "sarsa_arena/world.hpp"

namespace sarsa_arena {

enum class PolicyMode : std::uint8_t {
  /// Epsilon-greedy with Sarsa(lambda) updates.
  Learn,
  /// Frozen greedy policy, no updates.
  Greedy,
  /// Uniformly random aim action, no updates.
  UniformRandom,
};

struct LifeStats {
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double damage = 0.0;
  /// Sum of the rewards of the shooting intervals closed in this life.
  double reward = 0.0;
  std::uint64_t decisions = 0;
  std::uint64_t updates = 0;
};

/// What the learner sees of `opponent` while holding `weapon`.
CombatObservation observe(const World& world, AgentId self, AgentId opponent, const WeaponSpec& weapon);

/// Shooting controller of the learning bot. At each decision it picks the
/// nearest visible opponent, selects a weapon for the range band, encodes
/// the combat state and chooses an aim action. The reward of the previous
/// action is the damage dealt since it was chosen, or -1 when it fired but
/// dealt none; an interval without shots or damage is not a learning step.
class RlShooter {
 public:
  RlShooter(TableSet& tables, const Config& cfg, Rng& rng, PolicyMode mode = PolicyMode::Learn);

  FireOrder decide(const World& world, AgentId self);

  void begin_life();
  /// Closes the open interval (terminal step) and reports the life. `died`
  /// advances the lives counter that drives exploration.
  LifeStats end_life(const World& world, AgentId self, bool died);

  PolicyMode mode() const { return mode_; }
  std::uint64_t lives() const { return lives_; }
  void set_lives(std::uint64_t lives) { lives_ = lives; }
  double epsilon() const;
  std::uint64_t total_updates() const { return total_updates_; }
  const std::optional<StepDiagnostics>& last_step() const { return last_step_; }

 private:
  bool interval_active(const AgentState& a) const;
  void close_interval(const AgentState& a, const std::optional<PairRef>& next);

  TableSet* tables_;
  const Config* cfg_;
  Rng* rng_;
  PolicyMode mode_;
  std::uint64_t lives_ = 0;

  std::optional<PairRef> pending_;
  std::uint64_t base_shots_ = 0;
  double base_damage_ = 0.0;
  double life_reward_ = 0.0;
  std::uint64_t life_decisions_ = 0;
  std::uint64_t life_updates_ = 0;
  std::uint64_t total_updates_ = 0;
  std::optional<StepDiagnostics> last_step_;
};

}  // namespace sarsa_arena
