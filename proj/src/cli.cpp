#include "sarsa_arena/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "sarsa_arena/config.hpp"
#include "sarsa_arena/harness.hpp"
#include "sarsa_arena/metrics.hpp"
#include "sarsa_arena/report.hpp"
#include "sarsa_arena/snapshot.hpp"
#include "sarsa_arena/state_encoder.hpp"
#include "sarsa_arena/weapons.hpp"

namespace sarsa_arena {

namespace {

constexpr const char* kConfigEnv = "SARSA_ARENA_CONFIG";

struct TrainArgs {
  std::string level;
  std::optional<int> games;
  std::optional<double> minutes;
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  std::optional<int> snapshot_every;
  bool events = false;
};

struct ReportArgs {
  std::string in;
  bool svg = false;
  bool tables = false;
};

struct InspectArgs {
  std::string snapshot;
  std::optional<int> state;
  std::optional<int> top;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  std::string source = a.config;
  if (source.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') source = env;
  }
  Config cfg;
  try {
    if (!source.empty()) cfg = load_config(source);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  const double scale = cfg.harness.scale;
  const int games = std::max(1, static_cast<int>(std::lround(a.games.value_or(cfg.harness.games) * scale)));
  const double minutes = a.minutes.value_or(cfg.harness.minutes) * scale;
  const std::filesystem::path root(a.out);

  std::vector<int> levels = a.level == "all" ? std::vector<int>{1, 3, 5} : std::vector<int>{std::stoi(a.level)};
  std::vector<RunConfig> runs;
  for (int level : levels) {
    RunConfig r;
    r.level = level;
    r.games = games;
    r.minutes = minutes;
    r.seed = a.seed;
    r.snapshot_every = a.snapshot_every.value_or(cfg.harness.snapshot_every);
    r.out_dir = root / ("level" + std::to_string(level));
    r.log_events = a.events;
    try {
      r.validate();
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    runs.push_back(r);
  }

  nlohmann::json manifest;
  manifest["tool"] = "sarsa_arena";
  manifest["version"] = SARSA_ARENA_VERSION;
  manifest["config"] = source.empty() ? "<built-in defaults>" : source;
  manifest["seed"] = a.seed;
  manifest["runs"] = nlohmann::json::array();
  for (const auto& r : runs) {
    manifest["runs"].push_back({{"run_id", r.run_id()},
                                {"level", r.level},
                                {"games", r.games},
                                {"minutes", r.minutes},
                                {"snapshot_every", r.snapshot_every},
                                {"dir", r.out_dir.filename().string()}});
  }
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  std::ofstream mf(root / "manifest.json", std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << '\n';
  if (ec || !mf) {
    err << "error: cannot write to output directory " << root.string() << '\n';
    return kExitFailure;
  }
  mf.close();

  std::vector<CampaignResult> results;
  try {
    results = run_campaigns(cfg, runs);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  for (const auto& r : results) {
    std::uint64_t kills = 0, others = 0, suicides = 0;
    for (const auto& g : r.games.rows) {
      kills += g.kills;
      others += g.deaths_by_others;
      suicides += g.suicides;
    }
    auto kd = kd_ratio(kills, others, suicides);
    out << "level " << r.run.level << ": " << r.games.rows.size() << " games, " << r.lives.size() << " lives, "
        << kills << " kills, " << others + suicides << " deaths (" << suicides << " suicides), KD "
        << (kd ? std::to_string(*kd) : std::string("n/a")) << '\n';
  }
  return kExitOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir(a.in);
  try {
    auto data = load_run_directory(dir);
    std::vector<CampaignSummary> summaries;
    for (const auto& d : data) summaries.push_back(summarize_campaign(d));
    out << render_report(summaries);
    if (a.tables) {
      std::ofstream t(dir / "tables.csv", std::ios::binary | std::ios::trunc);
      t << render_tables_csv(summaries);
      if (!t) throw std::runtime_error("cannot write " + (dir / "tables.csv").string());
      out << "\nwrote " << (dir / "tables.csv").string() << '\n';
    }
    if (a.svg) {
      for (const auto& d : data) {
        for (const auto& p : write_figures(d, dir)) out << "wrote " << p.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_inspect(const InspectArgs& a, std::ostream& out, std::ostream& err) {
  SnapshotDocument doc;
  try {
    doc = read_snapshot_file(a.snapshot);
  } catch (const SnapshotError& e) {
    err << "error: " << a.snapshot << ":" << e.line() << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  out << "lives " << doc.lives << '\n';
  out << "params " << format_double(doc.alpha) << ' ' << format_double(doc.gamma) << ' ' << format_double(doc.lambda)
      << '\n';
  for (auto c : kAllCategories) out << category_name(c) << ": " << doc.tables[c].nonzero_count() << " nonzero\n";

  if (a.state) {
    StateId s(*a.state);
    out << "state " << s.index() << '\n';
    for (auto c : kAllCategories) {
      auto q = doc.tables[c].q_values(s);
      auto actions = actions_for(c);
      out << "  " << category_name(c) << ':';
      for (int i = 0; i < kActionCount; ++i) {
        out << ' ' << label_name(actions[static_cast<std::size_t>(i)].label) << '=' << format_double(q[static_cast<std::size_t>(i)]);
      }
      out << '\n';
    }
  }
  if (a.top) {
    struct Entry {
      double value;
      WeaponCategory category;
      int state;
      int action;
    };
    std::vector<Entry> entries;
    for (auto c : kAllCategories) {
      for (int s = 0; s < kStateCount; ++s) {
        auto q = doc.tables[c].q_values(StateId(s));
        for (int i = 0; i < kActionCount; ++i) {
          if (q[static_cast<std::size_t>(i)] != 0.0) entries.push_back({q[static_cast<std::size_t>(i)], c, s, i});
        }
      }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.value > y.value; });
    const std::size_t n = std::min(entries.size(), static_cast<std::size_t>(*a.top));
    out << "top " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = entries[i];
      auto label = actions_for(e.category)[static_cast<std::size_t>(e.action)].label;
      out << "  " << category_name(e.category) << " state " << e.state << " action " << e.action << " ("
          << label_name(label) << ") " << format_double(e.value) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sarsa(lambda) shooting bot: training campaigns, reports and snapshot inspection", "sarsa_arena"};
  app.set_version_flag("--version", SARSA_ARENA_VERSION);
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Run training campaigns");
  t->add_option("--level", train.level, "Opponent level")->required()->check(CLI::IsMember({"1", "3", "5", "all"}));
  t->add_option("--games", train.games, "Games per campaign (before scale)")->check(CLI::PositiveNumber);
  t->add_option("--minutes", train.minutes, "Simulated minutes per game (before scale)")->check(CLI::PositiveNumber);
  t->add_option("--seed", train.seed, "Root seed");
  t->add_option("--config", train.config, "Configuration file");
  t->add_option("--out", train.out, "Output directory")->required();
  t->add_option("--snapshot-every", train.snapshot_every, "Keep every k-th per-death snapshot")
      ->check(CLI::PositiveNumber);
  t->add_flag("--events", train.events, "Also write events.log");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Summarize a finished run");
  r->add_option("--in", report.in, "Run directory")->required();
  r->add_flag("--svg", report.svg, "Write SVG figures");
  r->add_flag("--tables", report.tables, "Write tables.csv");

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "Print a Q-table snapshot");
  i->add_option("snapshot", inspect.snapshot, "Snapshot file")->required();
  i->add_option("--state", inspect.state, "Print the Q-values of one state")->check(CLI::Range(0, kStateCount - 1));
  i->add_option("--top", inspect.top, "Print the N highest-valued pairs")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (t->parsed()) return cmd_train(train, out, err);
  if (r->parsed()) return cmd_report(report, out, err);
  return cmd_inspect(inspect, out, err);
}

}  // namespace sarsa_arena
