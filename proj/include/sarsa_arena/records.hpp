#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sarsa_arena {

enum class LifeEnd : std::uint8_t { Killed, SuicidePit, SuicideSplash, GameEnd };

std::string_view life_end_name(LifeEnd e);
std::optional<LifeEnd> parse_life_end(std::string_view name);

struct LifeRecord {
  std::string run_id;
  int game = 0;
  /// Cumulative across the campaign, starting at 0.
  std::uint64_t life = 0;
  int level = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double reward = 0.0;
  double duration_s = 0.0;
  LifeEnd cause = LifeEnd::GameEnd;

  bool operator==(const LifeRecord&) const = default;
};

struct GameRecord {
  std::string run_id;
  int game = 0;
  int level = 0;
  std::uint64_t kills = 0;
  std::uint64_t deaths_by_others = 0;
  std::uint64_t suicides = 0;
  std::uint64_t max_kill_streak = 0;
  std::uint64_t weapons_collected = 0;
  std::uint64_t ammo_collected = 0;
  double time_moving_s = 0.0;
  double distance_uu = 0.0;
  /// Trigger time per weapon mode, in armory order.
  std::vector<double> shoot_s;

  double shoot_s_total() const;
  bool operator==(const GameRecord&) const = default;
};

/// Games plus the weapon names labelling their shoot_s columns.
struct GameTable {
  std::vector<std::string> weapons;
  std::vector<GameRecord> rows;
};

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string lives_header();
std::string format_life(const LifeRecord& r);
std::string games_header(const std::vector<std::string>& weapons);
std::string format_game(const GameRecord& r);

std::vector<LifeRecord> parse_lives(std::string_view text, std::string_view source = "lives.csv");
GameTable parse_games(std::string_view text, std::string_view source = "games.csv");

/// Throws CsvError (line 0) when the file cannot be read.
std::vector<LifeRecord> read_lives(const std::filesystem::path& path);
GameTable read_games(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sarsa_arena
