#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sarsa_arena/metrics.hpp"
#include "sarsa_arena/records.hpp"

namespace sarsa_arena {

/// Records of one finished campaign directory.
struct CampaignData {
  int level = 0;
  std::filesystem::path dir;
  std::vector<LifeRecord> lives;
  GameTable games;
};

/// Loads `dir` itself if it holds lives.csv, else every `level<L>`
/// subdirectory in ascending level order. Throws CsvError naming the missing
/// or corrupt file.
std::vector<CampaignData> load_run_directory(const std::filesystem::path& dir);

struct CampaignSummary {
  int level = 0;
  std::size_t lives = 0;
  std::size_t games = 0;
  std::uint64_t kills = 0;
  std::uint64_t deaths_by_others = 0;
  std::uint64_t suicides = 0;
  std::optional<double> kd;
  /// Per-life statistics over lives that ended in death.
  std::optional<Summary> hits;
  std::optional<Summary> misses;
  std::optional<Summary> reward;
  /// From the per-life averages.
  std::optional<double> hit_pct;
  // Per-game averages.
  double kills_per_game = 0.0;
  double deaths_per_game = 0.0;
  double suicides_per_game = 0.0;
  double max_streak_per_game = 0.0;
  double weapons_per_game = 0.0;
  double ammo_per_game = 0.0;
  double moving_min_per_game = 0.0;
  double distance_per_game = 0.0;
  double shooting_min_per_game = 0.0;
  std::vector<std::string> weapons;
  std::vector<double> shooting_min_per_weapon;
};

CampaignSummary summarize_campaign(const CampaignData& data);

/// Plain-text tables: totals and KD, per-life statistics, hit/miss split,
/// per-game averages and shooting time per weapon.
std::string render_report(const std::vector<CampaignSummary>& summaries);
/// Long format: level,table,metric,value.
std::string render_tables_csv(const std::vector<CampaignSummary>& summaries);

/// Per-game line plot with its centred moving average overlaid.
std::string svg_line_plot(const std::string& title, const std::string& y_label, const std::vector<double>& series,
                          int cma_window = 11);
std::string svg_scatter_plot(const std::string& title, const std::string& y_label, const std::vector<double>& series);

/// kills_L<L>.svg, deaths_L<L>.svg and kill_streak_L<L>.svg in `out_dir`.
std::vector<std::filesystem::path> write_figures(const CampaignData& data, const std::filesystem::path& out_dir);

}  // namespace sarsa_arena
