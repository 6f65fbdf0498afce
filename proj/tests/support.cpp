#include "support.hpp"

namespace sarsa_arena::testing {

double chain_mdp_max_error(std::uint64_t seed, int episodes, int anneal_until, double eps0) {
  const LearnerConfig cfg;
  TableSet tables;
  Rng rng(seed);
  const auto cat = WeaponCategory::InstantHit;
  QTable& table = tables[cat];

  for (int ep = 0; ep < episodes; ++ep) {
    double eps = ep >= anneal_until ? 0.0 : eps0 * (1.0 - static_cast<double>(ep) / anneal_until);
    tables.begin_life();
    // Exploring start: without it the pairs the greedy policy never takes
    // keep whatever error the last exploratory visit left behind.
    int s = rng.below(ChainMdp::kStates);
    int a = rng.below(kActionCount);
    table.record_visit(StateId(s), a);
    // Bounded in case a greedy policy loops; the chain is short.
    for (int t = 0; t < 200; ++t) {
      auto o = ChainMdp::step(s, a);
      if (!o.next) {
        tables.update({cat, StateId(s), a}, o.reward, std::nullopt, cfg);
        break;
      }
      int a_next = select_action(table, StateId(*o.next), eps, rng).action;
      tables.update({cat, StateId(s), a}, o.reward, PairRef{cat, StateId(*o.next), a_next}, cfg);
      s = *o.next;
      a = a_next;
    }
  }

  auto q_star = ChainMdp::optimal_q(cfg.gamma());
  double worst = 0.0;
  for (int s = 0; s < ChainMdp::kStates; ++s) {
    for (int a = 0; a < kActionCount; ++a) {
      worst = std::max(worst, std::abs(table.q(StateId(s), a) -
                                       q_star[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]));
    }
  }
  return worst;
}

}  // namespace sarsa_arena::testing
