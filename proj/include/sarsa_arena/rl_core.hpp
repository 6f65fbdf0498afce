#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sarsa_arena/common.hpp"

namespace sarsa_arena {

struct ExplorationBand {
  std::uint64_t lives_lower_bound = 0;
  double epsilon = 0.0;
  bool operator==(const ExplorationBand&) const = default;
};

/// Lives-indexed exploration rate. Bands start at 0 and strictly increase.
class ExplorationSchedule {
 public:
  /// 50% for the first 10000 lives, then 40/30/20/10%, and 5% from 50000 on.
  ExplorationSchedule();
  explicit ExplorationSchedule(std::vector<ExplorationBand> bands);

  const std::vector<ExplorationBand>& bands() const { return bands_; }
  double epsilon_for_lives(std::uint64_t lives) const;

  bool operator==(const ExplorationSchedule&) const = default;

 private:
  std::vector<ExplorationBand> bands_;
};

inline double epsilon_for_lives(const ExplorationSchedule& schedule, std::uint64_t lives) {
  return schedule.epsilon_for_lives(lives);
}

/// Sarsa(lambda) hyper-parameters. The constructor rejects values outside
/// alpha in (0,1], gamma in [0,1], lambda in [0,1].
class LearnerConfig {
 public:
  LearnerConfig() = default;
  LearnerConfig(double alpha, double gamma, double lambda,
                ExplorationSchedule schedule = ExplorationSchedule());

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }
  const ExplorationSchedule& schedule() const { return schedule_; }

  bool operator==(const LearnerConfig&) const = default;

 private:
  double alpha_ = 0.7;
  double gamma_ = 0.5;
  double lambda_ = 0.9;
  ExplorationSchedule schedule_;
};

/// Traces below this are dropped from the active set.
inline constexpr double kTraceFloor = 1e-8;

/// Q-values, eligibility traces and visit counts for one weapon category.
///
/// Q-values and visit counts are dense over the 6480 pairs. Traces are dense
/// too, but only the pairs in the active list are ever non-zero, so a sweep
/// costs O(active) rather than O(6480).
class QTable {
 public:
  explicit QTable(WeaponCategory category);

  WeaponCategory category() const { return category_; }

  double q(StateId s, int action) const { return q_[pair(s, action)]; }
  void set_q(StateId s, int action, double value);
  std::span<const double, kActionCount> q_values(StateId s) const {
    return std::span<const double, kActionCount>(q_.data() + s.index() * kActionCount,
                                                 kActionCount);
  }
  double trace(StateId s, int action) const { return trace_[pair(s, action)]; }
  std::uint32_t visits(StateId s, int action) const { return visits_[pair(s, action)]; }
  void set_visits(StateId s, int action, std::uint32_t count) { visits_[pair(s, action)] = count; }

  std::size_t nonzero_count() const;
  std::size_t active_trace_count() const { return active_.size(); }

  /// Resets every trace to zero. Q-values and visit counts are kept.
  void clear_traces();

  // Low-level steps of the Sarsa(lambda) sweep, shared with TableSet.
  void mark_eligible(StateId s, int action);
  void record_visit(StateId s, int action) { ++visits_[pair(s, action)]; }
  /// For every eligible pair: Q += step * e, then e *= decay; traces that
  /// fall below kTraceFloor leave the active set.
  void sweep(double step, double decay);
  /// Literal all-pairs version of sweep() with no floor.
  void sweep_all_pairs(double step, double decay);

  /// Q-values only; traces and visits are transient learning state.
  bool same_values(const QTable& other) const { return category_ == other.category_ && q_ == other.q_; }

 private:
  static std::size_t pair(StateId s, int action);

  WeaponCategory category_;
  std::vector<double> q_;
  std::vector<double> trace_;
  std::vector<std::uint32_t> visits_;
  std::vector<std::uint32_t> active_;
};

struct StepDiagnostics {
  double delta = 0.0;
  double reward = 0.0;
  double epsilon_used = 0.0;
  bool was_exploratory = false;
};

struct ActionChoice {
  int action = 0;
  bool exploratory = false;
};

/// Epsilon-greedy choice. The greedy branch breaks ties uniformly; the
/// exploratory branch prefers actions this state has never taken. Increments
/// the visit count of the returned pair.
ActionChoice select_action(QTable& table, StateId state, double epsilon, Rng& rng);

/// One Sarsa(lambda) step with replacing traces. Throws std::invalid_argument
/// on a non-finite reward or an action outside [0, 5).
StepDiagnostics sarsa_update(QTable& table, StateId s, int a, double r, StateId s_next, int a_next,
                             const LearnerConfig& cfg);

/// Same step as sarsa_update, evaluated by sweeping all 6480 pairs.
StepDiagnostics sarsa_update_full_sweep(QTable& table, StateId s, int a, double r, StateId s_next,
                                        int a_next, const LearnerConfig& cfg);

/// Episode boundary: clears eligibility traces.
void begin_life(QTable& table);

/// A state-action pair in a specific category's table.
struct PairRef {
  WeaponCategory category = WeaponCategory::Other;
  StateId state;
  int action = 0;
  bool operator==(const PairRef&) const = default;
};

/// The six per-category tables of one learner. Traces span all six, so a
/// step whose next pair lives in another category still credits the pairs
/// visited earlier in the life.
class TableSet {
 public:
  TableSet();

  QTable& operator[](WeaponCategory c) { return tables_[category_index(c)]; }
  const QTable& operator[](WeaponCategory c) const { return tables_[category_index(c)]; }

  void begin_life();
  /// Sarsa(lambda) step from `current` to `next`; an empty `next` is a
  /// terminal step whose bootstrap value is 0.
  StepDiagnostics update(const PairRef& current, double reward, const std::optional<PairRef>& next,
                         const LearnerConfig& cfg);

  bool same_values(const TableSet& other) const;
  std::size_t nonzero_count() const;

 private:
  std::array<QTable, kCategoryCount> tables_;
};

}  // namespace sarsa_arena
