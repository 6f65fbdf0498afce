#include "sarsa_arena/records.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sarsa_arena/snapshot.hpp"

namespace sarsa_arena {

namespace {

constexpr std::string_view kLivesColumns[] = {"run_id", "game",   "life",       "level",      "hits",
                                              "misses", "reward", "duration_s", "death_cause"};
constexpr std::string_view kGameColumns[] = {"run_id",
                                             "game",
                                             "level",
                                             "kills",
                                             "deaths_by_others",
                                             "suicides",
                                             "max_kill_streak",
                                             "weapons_collected",
                                             "ammo_collected",
                                             "time_moving_s",
                                             "distance_uu",
                                             "shoot_s_total"};
constexpr std::string_view kShootPrefix = "shoot_s_";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class LineReader {
 public:
  LineReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) fail("truncated line (missing newline)", line_ + 1);
    line = text_.substr(pos_, nl - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = nl + 1;
    ++line_;
    return true;
  }
  std::size_t line() const { return line_; }
  [[noreturn]] void fail(const std::string& what, std::size_t line) const {
    throw CsvError(std::string(source_), line, what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, line_); }

  template <class T>
  T number(std::string_view field, std::string_view column) const {
    T v{};
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || p != field.data() + field.size() || field.empty()) {
      fail("bad value '" + std::string(field) + "' in column " + std::string(column));
    }
    return v;
  }

 private:
  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <class Range>
std::string join(const Range& cols) {
  std::string out;
  for (const auto& c : cols) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

}  // namespace

CsvError::CsvError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

std::string_view life_end_name(LifeEnd e) {
  switch (e) {
    case LifeEnd::Killed: return "killed";
    case LifeEnd::SuicidePit: return "suicide-pit";
    case LifeEnd::SuicideSplash: return "suicide-splash";
    case LifeEnd::GameEnd: return "game-end";
  }
  return "?";
}

std::optional<LifeEnd> parse_life_end(std::string_view name) {
  for (auto e : {LifeEnd::Killed, LifeEnd::SuicidePit, LifeEnd::SuicideSplash, LifeEnd::GameEnd}) {
    if (life_end_name(e) == name) return e;
  }
  return std::nullopt;
}

double GameRecord::shoot_s_total() const { return std::accumulate(shoot_s.begin(), shoot_s.end(), 0.0); }

std::string lives_header() { return join(kLivesColumns) + "\n"; }

std::string format_life(const LifeRecord& r) {
  std::ostringstream out;
  out << r.run_id << ',' << r.game << ',' << r.life << ',' << r.level << ',' << r.hits << ',' << r.misses << ','
      << format_double(r.reward) << ',' << format_double(r.duration_s) << ',' << life_end_name(r.cause) << '\n';
  return out.str();
}

std::string games_header(const std::vector<std::string>& weapons) {
  std::string out = join(kGameColumns);
  for (const auto& w : weapons) out += "," + std::string(kShootPrefix) + w;
  return out + "\n";
}

std::string format_game(const GameRecord& r) {
  std::ostringstream out;
  out << r.run_id << ',' << r.game << ',' << r.level << ',' << r.kills << ',' << r.deaths_by_others << ','
      << r.suicides << ',' << r.max_kill_streak << ',' << r.weapons_collected << ',' << r.ammo_collected << ','
      << format_double(r.time_moving_s) << ',' << format_double(r.distance_uu) << ','
      << format_double(r.shoot_s_total());
  for (double s : r.shoot_s) out << ',' << format_double(s);
  out << '\n';
  return out.str();
}

std::vector<LifeRecord> parse_lives(std::string_view text, std::string_view source) {
  LineReader in(text, source);
  std::string_view line;
  if (!in.next(line)) in.fail("empty file (missing header)", 1);
  if (std::string(line) + "\n" != lives_header()) in.fail("unexpected header");
  std::vector<LifeRecord> out;
  while (in.next(line)) {
    auto f = split(line);
    if (f.size() != std::size(kLivesColumns)) in.fail("expected 9 fields, got " + std::to_string(f.size()));
    LifeRecord r;
    r.run_id = std::string(f[0]);
    r.game = in.number<int>(f[1], "game");
    r.life = in.number<std::uint64_t>(f[2], "life");
    r.level = in.number<int>(f[3], "level");
    r.hits = in.number<std::uint64_t>(f[4], "hits");
    r.misses = in.number<std::uint64_t>(f[5], "misses");
    r.reward = in.number<double>(f[6], "reward");
    r.duration_s = in.number<double>(f[7], "duration_s");
    auto cause = parse_life_end(f[8]);
    if (!cause) in.fail("unknown death_cause '" + std::string(f[8]) + "'");
    r.cause = *cause;
    out.push_back(std::move(r));
  }
  return out;
}

GameTable parse_games(std::string_view text, std::string_view source) {
  LineReader in(text, source);
  std::string_view line;
  if (!in.next(line)) in.fail("empty file (missing header)", 1);
  auto header = split(line);
  const std::size_t fixed = std::size(kGameColumns);
  if (header.size() < fixed) in.fail("unexpected header");
  for (std::size_t i = 0; i < fixed; ++i) {
    if (header[i] != kGameColumns[i]) in.fail("unexpected header column '" + std::string(header[i]) + "'");
  }
  GameTable table;
  for (std::size_t i = fixed; i < header.size(); ++i) {
    if (header[i].substr(0, kShootPrefix.size()) != kShootPrefix || header[i].size() == kShootPrefix.size()) {
      in.fail("unexpected header column '" + std::string(header[i]) + "'");
    }
    table.weapons.emplace_back(header[i].substr(kShootPrefix.size()));
  }
  while (in.next(line)) {
    auto f = split(line);
    if (f.size() != header.size()) {
      in.fail("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
    }
    GameRecord r;
    r.run_id = std::string(f[0]);
    r.game = in.number<int>(f[1], "game");
    r.level = in.number<int>(f[2], "level");
    r.kills = in.number<std::uint64_t>(f[3], "kills");
    r.deaths_by_others = in.number<std::uint64_t>(f[4], "deaths_by_others");
    r.suicides = in.number<std::uint64_t>(f[5], "suicides");
    r.max_kill_streak = in.number<std::uint64_t>(f[6], "max_kill_streak");
    r.weapons_collected = in.number<std::uint64_t>(f[7], "weapons_collected");
    r.ammo_collected = in.number<std::uint64_t>(f[8], "ammo_collected");
    r.time_moving_s = in.number<double>(f[9], "time_moving_s");
    r.distance_uu = in.number<double>(f[10], "distance_uu");
    double total = in.number<double>(f[11], "shoot_s_total");
    for (std::size_t i = fixed; i < f.size(); ++i) r.shoot_s.push_back(in.number<double>(f[i], header[i]));
    if (format_double(total) != format_double(r.shoot_s_total())) in.fail("shoot_s_total does not match its columns");
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<LifeRecord> read_lives(const std::filesystem::path& path) {
  return parse_lives(read_text_file(path), path.string());
}

GameTable read_games(const std::filesystem::path& path) { return parse_games(read_text_file(path), path.string()); }

}  // namespace sarsa_arena
