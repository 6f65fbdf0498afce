#include "sarsa_arena/harness.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <stdexcept>

#include "sarsa_arena/snapshot.hpp"
#include "sarsa_arena/world.hpp"

namespace sarsa_arena {

namespace {

constexpr AgentId kLearner = 0;

struct GameTotals {
  GameRecord record;
  EventTally tally;
};

/// Plays one game. `on_life(stats, cause, duration_s)` runs after every
/// learner life and returns false to stop the game early; `on_events` sees
/// every tick's events before they are tallied.
template <class OnLife, class OnEvents>
GameTotals play_game(const Config& cfg, int level, std::uint64_t world_seed, long ticks, RlShooter& shooter,
                     OnLife&& on_life, OnEvents&& on_events) {
  World world = World::match(cfg, level, world_seed);
  GameTotals out;
  auto& rec = out.record;
  bool open = false;
  bool keep_going = true;
  long start_tick = 0;
  std::uint64_t streak = 0;

  auto close_life = [&](LifeEnd cause, bool died) {
    LifeStats stats = shooter.end_life(world, kLearner, died);
    double duration = static_cast<double>(world.tick_index() - start_tick) * world.dt();
    open = false;
    streak = 0;
    keep_going = on_life(stats, cause, duration);
  };

  for (long t = 0; t < ticks && keep_going; ++t) {
    auto events = world.tick(&shooter);
    on_events(events);
    for (const auto& e : events) {
      if (const auto* s = std::get_if<SpawnEvent>(&e.kind); s && s->agent == kLearner) {
        ++out.tally.spawns;
        shooter.begin_life();
        open = true;
        start_tick = world.tick_index();
      } else if (const auto* k = std::get_if<KillEvent>(&e.kind)) {
        if (k->killer == kLearner) {
          ++out.tally.kills;
          ++rec.kills;
          rec.max_kill_streak = std::max(rec.max_kill_streak, ++streak);
        }
        if (k->victim == kLearner) {
          ++out.tally.deaths_by_others;
          ++rec.deaths_by_others;
          if (open) close_life(LifeEnd::Killed, true);
        }
      } else if (const auto* su = std::get_if<SuicideEvent>(&e.kind); su && su->victim == kLearner) {
        ++out.tally.suicides;
        ++rec.suicides;
        if (open) close_life(su->cause == SuicideCause::Pit ? LifeEnd::SuicidePit : LifeEnd::SuicideSplash, true);
      }
    }
  }
  if (open && keep_going) {
    world.settle_shots(kLearner);
    close_life(LifeEnd::GameEnd, false);
  }

  const auto& stats = world.agent(kLearner).stats;
  rec.level = level;
  rec.weapons_collected = stats.weapons_collected;
  rec.ammo_collected = stats.ammo_collected;
  rec.time_moving_s = stats.time_moving;
  rec.distance_uu = stats.distance;
  rec.shoot_s = stats.shoot_time;
  return out;
}

std::ofstream open_output(const std::filesystem::path& path, const std::string& header) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << header;
  f.flush();
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

}  // namespace

std::string RunConfig::run_id() const { return "L" + std::to_string(level) + "-s" + std::to_string(seed); }

long RunConfig::ticks_per_game(const PhysicsConfig& physics) const {
  return std::lround(minutes * 60.0 * physics.tick_hz);
}

void RunConfig::validate() const {
  if (level != 1 && level != 3 && level != 5) throw std::invalid_argument("level must be 1, 3 or 5");
  if (games < 1) throw std::invalid_argument("games must be >= 1");
  if (!(minutes > 0.0) || !std::isfinite(minutes)) throw std::invalid_argument("minutes must be > 0");
  if (snapshot_every < 1) throw std::invalid_argument("snapshot_every must be >= 1");
}

std::uint64_t game_seed(std::uint64_t seed, int level, int game) {
  return Rng::derive(seed, {static_cast<std::uint64_t>(level), 2, static_cast<std::uint64_t>(game)}).engine()();
}

CampaignResult run_campaign(const Config& cfg, const RunConfig& run) {
  run.validate();
  CampaignResult result;
  result.run = run;
  for (const auto& w : cfg.armory.weapons()) result.games.weapons.push_back(w.name);

  const bool files = !run.out_dir.empty();
  std::ofstream lives_csv, games_csv, events_log;
  if (files) {
    std::error_code ec;
    std::filesystem::create_directories(run.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + run.out_dir.string() + ": " + ec.message());
    lives_csv = open_output(run.out_dir / "lives.csv", lives_header());
    games_csv = open_output(run.out_dir / "games.csv", games_header(result.games.weapons));
    if (run.log_events) events_log = open_output(run.out_dir / "events.log", "");
  }

  Rng rng = Rng::derive(run.seed, {static_cast<std::uint64_t>(run.level), 1});
  RlShooter shooter(result.tables, cfg, rng, PolicyMode::Learn);
  const long ticks = run.ticks_per_game(cfg.physics);
  const std::string id = run.run_id();

  for (int g = 0; g < run.games; ++g) {
    if (events_log.is_open()) events_log << "game " << g << '\n';
    auto on_life = [&](const LifeStats& s, LifeEnd cause, double duration) {
      LifeRecord r;
      r.run_id = id;
      r.game = g;
      r.life = result.lives.size();
      r.level = run.level;
      r.hits = s.hits;
      r.misses = s.misses;
      r.reward = s.reward;
      r.duration_s = duration;
      r.cause = cause;
      if (files) {
        lives_csv << format_life(r);
        lives_csv.flush();
      }
      result.lives.push_back(std::move(r));
      if (cause != LifeEnd::GameEnd) {
        ++result.deaths;
        if (files && result.deaths % static_cast<std::uint64_t>(run.snapshot_every) == 0) {
          auto path = run.out_dir / ("snap_" + std::to_string(run.level) + "_" + std::to_string(result.deaths) + ".rlsq");
          write_snapshot_file(path, result.tables, shooter.lives(), cfg.learner);
          result.snapshots.push_back(path);
        }
      }
      return true;
    };
    auto on_events = [&](const std::vector<SimEvent>& events) {
      if (!events_log.is_open()) return;
      for (const auto& e : events) events_log << format_event(e, cfg.armory) << '\n';
    };
    GameTotals totals = play_game(cfg, run.level, game_seed(run.seed, run.level, g), ticks, shooter, on_life, on_events);
    totals.record.run_id = id;
    totals.record.game = g;
    if (files) {
      games_csv << format_game(totals.record);
      games_csv.flush();
    }
    result.events.kills += totals.tally.kills;
    result.events.deaths_by_others += totals.tally.deaths_by_others;
    result.events.suicides += totals.tally.suicides;
    result.events.spawns += totals.tally.spawns;
    result.games.rows.push_back(std::move(totals.record));
  }
  if (files) {
    auto path = run.out_dir / "final.rlsq";
    write_snapshot_file(path, result.tables, shooter.lives(), cfg.learner);
    if (!lives_csv || !games_csv) throw std::runtime_error("write failed in " + run.out_dir.string());
  }
  return result;
}

std::vector<CampaignResult> run_campaigns(const Config& cfg, const std::vector<RunConfig>& runs) {
  const long n = static_cast<long>(runs.size());
  std::vector<CampaignResult> out(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_campaign(cfg, runs[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<CampaignResult> run_campaigns_serial(const Config& cfg, const std::vector<RunConfig>& runs) {
  std::vector<CampaignResult> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(run_campaign(cfg, r));
  return out;
}

std::vector<double> evaluate_policy(const Config& cfg, const TableSet& tables, PolicyMode mode, int level,
                                    std::uint64_t seed, std::size_t lives, double minutes_per_game) {
  if (mode == PolicyMode::Learn) throw std::invalid_argument("evaluation needs a frozen policy");
  RunConfig probe;
  probe.level = level;
  probe.minutes = minutes_per_game;
  probe.validate();
  TableSet frozen = tables;
  Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(level), 3});
  RlShooter shooter(frozen, cfg, rng, mode);
  const long ticks = probe.ticks_per_game(cfg.physics);

  std::vector<double> rewards;
  rewards.reserve(lives);
  int idle_games = 0;
  for (int g = 0; rewards.size() < lives; ++g) {
    std::size_t before = rewards.size();
    auto on_life = [&](const LifeStats& s, LifeEnd cause, double) {
      if (cause != LifeEnd::GameEnd) rewards.push_back(s.reward);
      return rewards.size() < lives;
    };
    play_game(cfg, level, game_seed(seed, level, g), ticks, shooter, on_life, [](const std::vector<SimEvent>&) {});
    idle_games = rewards.size() == before ? idle_games + 1 : 0;
    if (idle_games >= 20) throw std::runtime_error("evaluation games produce no deaths");
  }
  return rewards;
}

}  // namespace sarsa_arena
