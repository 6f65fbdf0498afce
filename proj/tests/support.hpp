#pragma once

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sarsa_arena/common.hpp"
#include "sarsa_arena/rl_core.hpp"

namespace sarsa_arena::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sarsa_arena_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Literal transcription of the tabular Sarsa(lambda) step with replacing
/// traces, kept deliberately naive: ordered maps, no sparsity tricks.
struct ReferenceSarsa {
  using Key = std::pair<int, int>;
  std::map<Key, double> q;
  std::map<Key, double> e;

  double get_q(int s, int a) const {
    auto it = q.find({s, a});
    return it == q.end() ? 0.0 : it->second;
  }

  /// Returns delta. `next` empty means a terminal transition.
  double step(int s, int a, double r, std::optional<Key> next, double alpha, double gamma, double lambda) {
    double bootstrap = next ? get_q(next->first, next->second) : 0.0;
    double delta = r + gamma * bootstrap - get_q(s, a);
    e[{s, a}] = 1.0;
    for (auto& [key, trace] : e) {
      q[key] = get_q(key.first, key.second) + alpha * delta * trace;
      trace = gamma * lambda * trace;
    }
    return delta;
  }

  /// Copies every q value and trace of `table`.
  static ReferenceSarsa from(const QTable& table) {
    ReferenceSarsa ref;
    for (int s = 0; s < kStateCount; ++s) {
      for (int a = 0; a < kActionCount; ++a) {
        StateId id(s);
        if (table.q(id, a) != 0.0) ref.q[{s, a}] = table.q(id, a);
        if (table.trace(id, a) != 0.0) ref.e[{s, a}] = table.trace(id, a);
      }
    }
    return ref;
  }
};

/// Largest |difference| between the table's q values and the reference.
inline double max_q_error(const QTable& table, const ReferenceSarsa& ref) {
  double worst = 0.0;
  for (int s = 0; s < kStateCount; ++s) {
    for (int a = 0; a < kActionCount; ++a) {
      worst = std::max(worst, std::abs(table.q(StateId(s), a) - ref.get_q(s, a)));
    }
  }
  return worst;
}

/// Deterministic 5-state chain: action 0 moves right, every other action
/// moves left (state 0 stays put). Leaving state 4 to the right ends the
/// episode with reward 1; every other transition pays 0.
struct ChainMdp {
  static constexpr int kStates = 5;

  struct Outcome {
    double reward;
    std::optional<int> next;
  };

  static Outcome step(int s, int a) {
    if (a == 0) {
      if (s == kStates - 1) return {1.0, std::nullopt};
      return {0.0, s + 1};
    }
    return {0.0, std::max(0, s - 1)};
  }

  /// Q* by value iteration.
  static std::array<std::array<double, kActionCount>, kStates> optimal_q(double gamma) {
    std::array<std::array<double, kActionCount>, kStates> q{};
    for (int sweep = 0; sweep < 10000; ++sweep) {
      double change = 0.0;
      auto next_q = q;
      for (int s = 0; s < kStates; ++s) {
        for (int a = 0; a < kActionCount; ++a) {
          auto o = step(s, a);
          double v = 0.0;
          if (o.next) {
            v = q[static_cast<std::size_t>(*o.next)][0];
            for (double x : q[static_cast<std::size_t>(*o.next)]) v = std::max(v, x);
          }
          next_q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = o.reward + gamma * v;
          change = std::max(change, std::abs(next_q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] -
                                             q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]));
        }
      }
      q = next_q;
      if (change == 0.0) break;
    }
    return q;
  }
};

/// Runs Sarsa(lambda) on the chain for `episodes` episodes, each from a
/// random state and first action, with epsilon falling linearly from `eps0`
/// to 0 at `anneal_until`. Returns the largest |Q - Q*| over all chain pairs.
double chain_mdp_max_error(std::uint64_t seed, int episodes, int anneal_until, double eps0 = 0.5);

}  // namespace sarsa_arena::testing
