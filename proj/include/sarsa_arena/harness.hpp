#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sarsa_arena/config.hpp"
#include "sarsa_arena/records.hpp"
#include "sarsa_arena/rl_core.hpp"
#include "sarsa_arena/rl_shooter.hpp"

namespace sarsa_arena {

struct RunConfig {
  int level = 1;
  int games = 30;
  double minutes = 3.0;
  std::uint64_t seed = 0;
  /// Keep every k-th per-death snapshot (k = 1 keeps all).
  int snapshot_every = 50;
  /// Empty: run in memory only, write nothing.
  std::filesystem::path out_dir;
  /// Also write events.log (one line per simulator event).
  bool log_events = false;

  std::string run_id() const;
  long ticks_per_game(const PhysicsConfig& physics) const;
  /// Throws std::invalid_argument.
  void validate() const;
};

/// Learner-side event counts taken straight from the simulator's event
/// stream, independent of the life/game bookkeeping.
struct EventTally {
  std::uint64_t kills = 0;
  std::uint64_t deaths_by_others = 0;
  std::uint64_t suicides = 0;
  std::uint64_t spawns = 0;
};

struct CampaignResult {
  RunConfig run;
  std::vector<LifeRecord> lives;
  GameTable games;
  EventTally events;
  /// Lives ended by death; drives the exploration schedule.
  std::uint64_t deaths = 0;
  std::vector<std::filesystem::path> snapshots;
  TableSet tables;
};

/// Plays run.games sequential games at run.level; learning carries over from
/// game to game. With an output directory, lives.csv and games.csv are
/// appended record by record and snapshots are written as snap_<level>_<lives>.rlsq
/// (every k-th death, plus the final state as final.rlsq).
///
/// Throws std::runtime_error if the output directory is unusable, before
/// any simulation.
CampaignResult run_campaign(const Config& cfg, const RunConfig& run);

/// Independent campaigns in parallel (OpenMP).
std::vector<CampaignResult> run_campaigns(const Config& cfg, const std::vector<RunConfig>& runs);
/// Reference implementation: the same campaigns one after another.
std::vector<CampaignResult> run_campaigns_serial(const Config& cfg, const std::vector<RunConfig>& runs);

/// Per-life rewards of a fixed policy (no learning) over `lives` completed
/// lives at `level`. Game seeds come from `seed`, so two policies evaluated
/// with the same seed face the same sequence of game starts.
std::vector<double> evaluate_policy(const Config& cfg, const TableSet& tables, PolicyMode mode, int level,
                                    std::uint64_t seed, std::size_t lives, double minutes_per_game = 3.0);

/// Seed of game `game` of a campaign; shared by training and evaluation.
std::uint64_t game_seed(std::uint64_t seed, int level, int game);

}  // namespace sarsa_arena
