#include "sarsa_arena/rl_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sarsa_arena {

ExplorationSchedule::ExplorationSchedule()
    : bands_{{0, 0.50}, {10000, 0.40}, {20000, 0.30}, {30000, 0.20}, {40000, 0.10}, {50000, 0.05}} {}

ExplorationSchedule::ExplorationSchedule(std::vector<ExplorationBand> bands) : bands_(std::move(bands)) {
  if (bands_.empty() || bands_.front().lives_lower_bound != 0) {
    throw std::invalid_argument("exploration schedule must start at 0 lives");
  }
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    if (!(bands_[i].epsilon >= 0.0 && bands_[i].epsilon <= 1.0)) {
      throw std::invalid_argument("exploration rate outside [0, 1]");
    }
    if (i > 0 && bands_[i].lives_lower_bound <= bands_[i - 1].lives_lower_bound) {
      throw std::invalid_argument("exploration bands must strictly increase in lives");
    }
  }
}

double ExplorationSchedule::epsilon_for_lives(std::uint64_t lives) const {
  auto it = std::upper_bound(bands_.begin(), bands_.end(), lives,
                             [](std::uint64_t l, const ExplorationBand& b) { return l < b.lives_lower_bound; });
  return std::prev(it)->epsilon;
}

LearnerConfig::LearnerConfig(double alpha, double gamma, double lambda, ExplorationSchedule schedule)
    : alpha_(alpha), gamma_(gamma), lambda_(lambda), schedule_(std::move(schedule)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

QTable::QTable(WeaponCategory category)
    : category_(category),
      q_(kPairsPerCategory, 0.0),
      trace_(kPairsPerCategory, 0.0),
      visits_(kPairsPerCategory, 0) {}

std::size_t QTable::pair(StateId s, int action) {
  if (action < 0 || action >= kActionCount) {
    throw std::invalid_argument("action index " + std::to_string(action) + " outside [0, 5)");
  }
  return static_cast<std::size_t>(s.index()) * kActionCount + static_cast<std::size_t>(action);
}

void QTable::set_q(StateId s, int action, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("q value must be finite");
  q_[pair(s, action)] = value;
}

std::size_t QTable::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(q_.begin(), q_.end(), [](double v) { return v != 0.0; }));
}

void QTable::clear_traces() {
  for (auto idx : active_) trace_[idx] = 0.0;
  active_.clear();
}

void QTable::mark_eligible(StateId s, int action) {
  auto idx = pair(s, action);
  if (trace_[idx] == 0.0) active_.push_back(static_cast<std::uint32_t>(idx));
  trace_[idx] = 1.0;
}

void QTable::sweep(double step, double decay) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    auto idx = active_[i];
    q_[idx] += step * trace_[idx];
    trace_[idx] *= decay;
    if (trace_[idx] < kTraceFloor) {
      trace_[idx] = 0.0;
    } else {
      active_[kept++] = idx;
    }
  }
  active_.resize(kept);
}

void QTable::sweep_all_pairs(double step, double decay) {
  for (std::size_t idx = 0; idx < q_.size(); ++idx) {
    q_[idx] += step * trace_[idx];
    trace_[idx] *= decay;
  }
  active_.clear();
  for (std::size_t idx = 0; idx < trace_.size(); ++idx) {
    if (trace_[idx] != 0.0) active_.push_back(static_cast<std::uint32_t>(idx));
  }
}

ActionChoice select_action(QTable& table, StateId state, double epsilon, Rng& rng) {
  ActionChoice choice;
  std::array<int, kActionCount> candidates{};
  int n = 0;
  if (rng.uniform01() < epsilon) {
    choice.exploratory = true;
    for (int a = 0; a < kActionCount; ++a) {
      if (table.visits(state, a) == 0) candidates[n++] = a;
    }
    if (n == 0) {
      for (int a = 0; a < kActionCount; ++a) candidates[n++] = a;
    }
  } else {
    auto q = table.q_values(state);
    double best = *std::max_element(q.begin(), q.end());
    for (int a = 0; a < kActionCount; ++a) {
      if (q[a] == best) candidates[n++] = a;
    }
  }
  choice.action = n == 1 ? candidates[0] : candidates[rng.below(n)];
  table.record_visit(state, choice.action);
  return choice;
}

namespace {
void check_reward(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("reward must be finite");
}
}  // namespace

StepDiagnostics sarsa_update(QTable& table, StateId s, int a, double r, StateId s_next, int a_next,
                             const LearnerConfig& cfg) {
  check_reward(r);
  StepDiagnostics d;
  d.reward = r;
  d.delta = r + cfg.gamma() * table.q(s_next, a_next) - table.q(s, a);
  table.mark_eligible(s, a);
  table.sweep(cfg.alpha() * d.delta, cfg.gamma() * cfg.lambda());
  return d;
}

StepDiagnostics sarsa_update_full_sweep(QTable& table, StateId s, int a, double r, StateId s_next,
                                        int a_next, const LearnerConfig& cfg) {
  check_reward(r);
  StepDiagnostics d;
  d.reward = r;
  d.delta = r + cfg.gamma() * table.q(s_next, a_next) - table.q(s, a);
  table.mark_eligible(s, a);
  table.sweep_all_pairs(cfg.alpha() * d.delta, cfg.gamma() * cfg.lambda());
  return d;
}

void begin_life(QTable& table) { table.clear_traces(); }

TableSet::TableSet()
    : tables_{QTable(WeaponCategory::InstantHit), QTable(WeaponCategory::MachineGun),
              QTable(WeaponCategory::Projectile), QTable(WeaponCategory::SlowMoving),
              QTable(WeaponCategory::CloseRange), QTable(WeaponCategory::Other)} {}

void TableSet::begin_life() {
  for (auto& t : tables_) t.clear_traces();
}

StepDiagnostics TableSet::update(const PairRef& current, double reward, const std::optional<PairRef>& next,
                                 const LearnerConfig& cfg) {
  check_reward(reward);
  StepDiagnostics d;
  d.reward = reward;
  double bootstrap = next ? (*this)[next->category].q(next->state, next->action) : 0.0;
  d.delta = reward + cfg.gamma() * bootstrap - (*this)[current.category].q(current.state, current.action);
  (*this)[current.category].mark_eligible(current.state, current.action);
  double step = cfg.alpha() * d.delta;
  double decay = cfg.gamma() * cfg.lambda();
  for (auto& t : tables_) {
    if (t.active_trace_count() > 0) t.sweep(step, decay);
  }
  return d;
}

bool TableSet::same_values(const TableSet& other) const {
  for (int i = 0; i < kCategoryCount; ++i) {
    if (!tables_[i].same_values(other.tables_[i])) return false;
  }
  return true;
}

std::size_t TableSet::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.nonzero_count();
  return n;
}

}  // namespace sarsa_arena
