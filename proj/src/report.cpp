#include "sarsa_arena/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sarsa_arena {

namespace {

std::optional<int> level_from_dir_name(const std::string& name) {
  const std::string prefix = "level";
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  int level = 0;
  const char* b = name.data() + prefix.size();
  const char* e = name.data() + name.size();
  auto [p, ec] = std::from_chars(b, e, level);
  if (ec != std::errc{} || p != e) return std::nullopt;
  return level;
}

CampaignData load_campaign(const std::filesystem::path& dir, int level) {
  CampaignData d;
  d.dir = dir;
  d.level = level;
  for (const char* name : {"lives.csv", "games.csv"}) {
    if (!std::filesystem::is_regular_file(dir / name)) throw CsvError((dir / name).string(), 0, "missing");
  }
  d.lives = read_lives(dir / "lives.csv");
  d.games = read_games(dir / "games.csv");
  if (d.level == 0) {
    if (!d.lives.empty()) {
      d.level = d.lives.front().level;
    } else if (!d.games.rows.empty()) {
      d.level = d.games.rows.front().level;
    }
  }
  return d;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string opt(const std::optional<double>& v, int digits = 2) { return v ? fixed(*v, digits) : "n/a"; }

double mean_of(const std::vector<GameRecord>& rows, double (*field)(const GameRecord&)) {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : rows) sum += field(r);
  return sum / static_cast<double>(rows.size());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kWidth = 640.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Frame {
  double x_max = 1.0;
  double y_max = 1.0;

  double x(double i) const { return kLeft + (kWidth - kLeft - kRight) * (x_max > 0 ? i / x_max : 0.0); }
  double y(double v) const { return kHeight - kBottom - (kHeight - kTop - kBottom) * (v / y_max); }
};

Frame frame_for(const std::vector<double>& series) {
  Frame f;
  f.x_max = series.size() > 1 ? static_cast<double>(series.size() - 1) : 1.0;
  double hi = series.empty() ? 1.0 : *std::max_element(series.begin(), series.end());
  f.y_max = hi > 0.0 ? hi * 1.1 : 1.0;
  return f;
}

std::string svg_open(const std::string& title, const std::string& y_label, const Frame& f) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(title)
      << "</text>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\" font-size=\"12\">game</text>\n"
      << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << xml_escape(y_label) << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.y(0) + 4 << "\" text-anchor=\"end\" font-size=\"10\">0</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.y(f.y_max) + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
      << fixed(f.y_max, 1) << "</text>\n";
  return out.str();
}

std::string polyline(const std::vector<double>& ys, std::size_t offset, const Frame& f, const char* colour,
                     double width) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\" points=\"";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i) out << ' ';
    out << fixed(f.x(static_cast<double>(i + offset)), 1) << ',' << fixed(f.y(ys[i]), 1);
  }
  out << "\"/>\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::vector<CampaignData> load_run_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw CsvError(dir.string(), 0, "not a directory");
  if (std::filesystem::exists(dir / "lives.csv")) return {load_campaign(dir, 0)};
  std::vector<std::pair<int, std::filesystem::path>> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    if (auto level = level_from_dir_name(entry.path().filename().string())) found.emplace_back(*level, entry.path());
  }
  if (found.empty()) throw CsvError((dir / "lives.csv").string(), 0, "missing");
  std::sort(found.begin(), found.end());
  std::vector<CampaignData> out;
  for (const auto& [level, path] : found) out.push_back(load_campaign(path, level));
  return out;
}

CampaignSummary summarize_campaign(const CampaignData& data) {
  CampaignSummary s;
  s.level = data.level;
  s.lives = data.lives.size();
  s.games = data.games.rows.size();
  s.weapons = data.games.weapons;
  for (const auto& g : data.games.rows) {
    s.kills += g.kills;
    s.deaths_by_others += g.deaths_by_others;
    s.suicides += g.suicides;
  }
  s.kd = kd_ratio(s.kills, s.deaths_by_others, s.suicides);

  std::vector<double> hits, misses, reward;
  for (const auto& l : data.lives) {
    if (l.cause == LifeEnd::GameEnd) continue;
    hits.push_back(static_cast<double>(l.hits));
    misses.push_back(static_cast<double>(l.misses));
    reward.push_back(l.reward);
  }
  if (!hits.empty()) {
    s.hits = summarize(hits);
    s.misses = summarize(misses);
    s.reward = summarize(reward);
    s.hit_pct = hit_percentage(s.hits->mean, s.misses->mean);
  }

  const auto& rows = data.games.rows;
  s.kills_per_game = mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.kills); });
  s.deaths_per_game =
      mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.deaths_by_others + r.suicides); });
  s.suicides_per_game = mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.suicides); });
  s.max_streak_per_game = mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.max_kill_streak); });
  s.weapons_per_game = mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.weapons_collected); });
  s.ammo_per_game = mean_of(rows, [](const GameRecord& r) { return static_cast<double>(r.ammo_collected); });
  s.moving_min_per_game = mean_of(rows, [](const GameRecord& r) { return r.time_moving_s / 60.0; });
  s.distance_per_game = mean_of(rows, [](const GameRecord& r) { return r.distance_uu; });
  s.shooting_min_per_game = mean_of(rows, [](const GameRecord& r) { return r.shoot_s_total() / 60.0; });
  s.shooting_min_per_weapon.assign(s.weapons.size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.shoot_s.size() && i < s.weapons.size(); ++i) {
      s.shooting_min_per_weapon[i] += r.shoot_s[i] / 60.0;
    }
  }
  if (!rows.empty()) {
    for (auto& v : s.shooting_min_per_weapon) v /= static_cast<double>(rows.size());
  }
  return s;
}

std::string render_report(const std::vector<CampaignSummary>& summaries) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::vector<std::string>& cells) {
    out << std::left << std::setw(28) << label;
    for (const auto& c : cells) out << std::right << std::setw(14) << c;
    out << '\n';
  };
  auto header = [&](const std::string& title) {
    out << '\n' << title << '\n';
    std::vector<std::string> cells;
    for (const auto& s : summaries) cells.push_back("Level " + std::to_string(s.level));
    row("", cells);
  };
  auto line = [&](const std::string& label, auto&& cell) {
    std::vector<std::string> cells;
    for (const auto& s : summaries) cells.push_back(cell(s));
    row(label, cells);
  };

  header("Kills and deaths");
  line("Games", [](const CampaignSummary& s) { return std::to_string(s.games); });
  line("Total kills", [](const CampaignSummary& s) { return std::to_string(s.kills); });
  line("Total deaths", [](const CampaignSummary& s) { return std::to_string(s.deaths_by_others + s.suicides); });
  line("Deaths by suicide", [](const CampaignSummary& s) { return std::to_string(s.suicides); });
  line("KD ratio", [](const CampaignSummary& s) { return opt(s.kd); });

  header("Per-life statistics");
  line("Lives", [](const CampaignSummary& s) { return std::to_string(s.lives); });
  line("Hits avg", [](const CampaignSummary& s) { return s.hits ? fixed(s.hits->mean) : "n/a"; });
  line("Hits std dev", [](const CampaignSummary& s) { return s.hits ? fixed(s.hits->stddev) : "n/a"; });
  line("Misses avg", [](const CampaignSummary& s) { return s.misses ? fixed(s.misses->mean) : "n/a"; });
  line("Misses std dev", [](const CampaignSummary& s) { return s.misses ? fixed(s.misses->stddev) : "n/a"; });
  line("Reward avg", [](const CampaignSummary& s) { return s.reward ? fixed(s.reward->mean) : "n/a"; });
  line("Reward std dev", [](const CampaignSummary& s) { return s.reward ? fixed(s.reward->stddev) : "n/a"; });

  header("Hits and misses");
  line("Hit %", [](const CampaignSummary& s) { return opt(s.hit_pct, 1); });
  line("Miss %", [](const CampaignSummary& s) {
    return s.hit_pct ? fixed(100.0 - *s.hit_pct, 1) : std::string("n/a");
  });

  header("Minimum, maximum and median");
  line("Hits min/max/median", [](const CampaignSummary& s) {
    return s.hits ? fixed(s.hits->min, 0) + "/" + fixed(s.hits->max, 0) + "/" + fixed(s.hits->median, 0) : "n/a";
  });
  line("Misses min/max/median", [](const CampaignSummary& s) {
    return s.misses ? fixed(s.misses->min, 0) + "/" + fixed(s.misses->max, 0) + "/" + fixed(s.misses->median, 0)
                    : "n/a";
  });
  line("Reward min/max/median", [](const CampaignSummary& s) {
    return s.reward ? fixed(s.reward->min, 0) + "/" + fixed(s.reward->max, 0) + "/" + fixed(s.reward->median, 0)
                    : "n/a";
  });

  header("Per-game averages");
  line("Kills", [](const CampaignSummary& s) { return fixed(s.kills_per_game); });
  line("Deaths", [](const CampaignSummary& s) { return fixed(s.deaths_per_game); });
  line("Suicides", [](const CampaignSummary& s) { return fixed(s.suicides_per_game); });
  line("Max kill streak", [](const CampaignSummary& s) { return fixed(s.max_streak_per_game); });
  line("Weapons collected", [](const CampaignSummary& s) { return fixed(s.weapons_per_game); });
  line("Ammo collected", [](const CampaignSummary& s) { return fixed(s.ammo_per_game); });
  line("Time moving (min)", [](const CampaignSummary& s) { return fixed(s.moving_min_per_game); });
  line("Distance (UU)", [](const CampaignSummary& s) { return fixed(s.distance_per_game, 0); });
  line("Time shooting (min)", [](const CampaignSummary& s) { return fixed(s.shooting_min_per_game); });

  if (!summaries.empty()) {
    header("Shooting time per weapon (min/game)");
    for (std::size_t w = 0; w < summaries.front().weapons.size(); ++w) {
      line(summaries.front().weapons[w], [w](const CampaignSummary& s) {
        return w < s.shooting_min_per_weapon.size() ? fixed(s.shooting_min_per_weapon[w]) : std::string("n/a");
      });
    }
  }
  return out.str();
}

std::string render_tables_csv(const std::vector<CampaignSummary>& summaries) {
  std::ostringstream out;
  out << "level,table,metric,value\n";
  for (const auto& s : summaries) {
    auto put = [&](const char* table, const std::string& metric, const std::optional<double>& v) {
      out << s.level << ',' << table << ',' << metric << ',' << (v ? fixed(*v, 6) : "") << '\n';
    };
    put("kills_deaths", "kills", static_cast<double>(s.kills));
    put("kills_deaths", "deaths_by_others", static_cast<double>(s.deaths_by_others));
    put("kills_deaths", "suicides", static_cast<double>(s.suicides));
    put("kills_deaths", "kd_ratio", s.kd);
    for (const auto& [name, sum] : {std::pair{"hits", s.hits}, std::pair{"misses", s.misses}, std::pair{"reward", s.reward}}) {
      auto field = [&](double Summary::*m) { return sum ? std::optional<double>(*sum.*m) : std::nullopt; };
      put("per_life", std::string(name) + "_mean", field(&Summary::mean));
      put("per_life", std::string(name) + "_stddev", field(&Summary::stddev));
      put("per_life", std::string(name) + "_min", field(&Summary::min));
      put("per_life", std::string(name) + "_max", field(&Summary::max));
      put("per_life", std::string(name) + "_median", field(&Summary::median));
    }
    put("hits_misses", "hit_pct", s.hit_pct);
    put("per_game", "kills", s.kills_per_game);
    put("per_game", "deaths", s.deaths_per_game);
    put("per_game", "suicides", s.suicides_per_game);
    put("per_game", "max_kill_streak", s.max_streak_per_game);
    put("per_game", "weapons_collected", s.weapons_per_game);
    put("per_game", "ammo_collected", s.ammo_per_game);
    put("per_game", "time_moving_min", s.moving_min_per_game);
    put("per_game", "distance_uu", s.distance_per_game);
    put("per_game", "shooting_min", s.shooting_min_per_game);
    for (std::size_t w = 0; w < s.weapons.size(); ++w) {
      put("shooting_per_weapon", s.weapons[w], s.shooting_min_per_weapon[w]);
    }
  }
  return out.str();
}

std::string svg_line_plot(const std::string& title, const std::string& y_label, const std::vector<double>& series,
                          int cma_window) {
  Frame f = frame_for(series);
  std::string out = svg_open(title, y_label, f);
  out += polyline(series, 0, f, "#7a9cc6", 1.0);
  auto cma = centred_moving_average(series, cma_window);
  if (!cma.empty()) out += polyline(cma, static_cast<std::size_t>(cma_window / 2), f, "#c0392b", 2.0);
  return out + "</svg>\n";
}

std::string svg_scatter_plot(const std::string& title, const std::string& y_label, const std::vector<double>& series) {
  Frame f = frame_for(series);
  std::ostringstream out;
  out << svg_open(title, y_label, f);
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "<circle cx=\"" << fixed(f.x(static_cast<double>(i)), 1) << "\" cy=\"" << fixed(f.y(series[i]), 1)
        << "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::filesystem::path> write_figures(const CampaignData& data, const std::filesystem::path& out_dir) {
  std::vector<double> kills, deaths, streak;
  for (const auto& g : data.games.rows) {
    kills.push_back(static_cast<double>(g.kills));
    deaths.push_back(static_cast<double>(g.deaths_by_others + g.suicides));
    streak.push_back(static_cast<double>(g.max_kill_streak));
  }
  const std::string lv = "Level " + std::to_string(data.level);
  const std::string suffix = "_L" + std::to_string(data.level) + ".svg";
  std::vector<std::filesystem::path> paths{out_dir / ("kills" + suffix), out_dir / ("deaths" + suffix),
                                           out_dir / ("kill_streak" + suffix)};
  write_file(paths[0], svg_line_plot("Kills per game, " + lv, "kills", kills));
  write_file(paths[1], svg_line_plot("Deaths per game, " + lv, "deaths", deaths));
  write_file(paths[2], svg_scatter_plot("Longest kill streak per game, " + lv, "kill streak", streak));
  return paths;
}

}  // namespace sarsa_arena
