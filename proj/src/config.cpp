#include "sarsa_arena/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sarsa_arena {

ArenaConfig default_arena() {
  ArenaConfig a;
  a.walls = {{{1500, 1200}, {1500, 1800}}, {{2500, 2200}, {2500, 2800}}};
  a.pits = {{1750, 1750, 2250, 2250}, {450, 2850, 850, 3250}, {3150, 750, 3550, 1150}};
  a.spawns = {{400, 400}, {3600, 3600}, {400, 2000}, {3600, 2000}};
  for (double x : {400.0, 1000.0, 2000.0, 3000.0, 3600.0}) {
    for (double y : {400.0, 1000.0, 2000.0, 3000.0, 3600.0}) {
      if (x == 2000.0 && y == 2000.0) continue;  // centre pit
      a.waypoints.push_back({x, y});
    }
  }
  a.weapon_pickups = {
      {"flak_cannon", {1000, 2000}},   {"shock_rifle", {2000, 1000}},   {"rocket_launcher", {3000, 2000}},
      {"link_gun", {2000, 3000}},      {"lightning_gun", {3600, 400}},  {"mini_gun", {400, 3600}},
  };
  a.ammo_pickups = {
      {"flak_cannon", {1000, 1000}},   {"shock_rifle", {3000, 3000}},   {"rocket_launcher", {3000, 1000}},
      {"link_gun", {1000, 3000}},      {"lightning_gun", {3600, 1000}}, {"assault_rifle", {2000, 400}},
  };
  return a;
}

std::array<OpponentProfile, 3> default_opponents() {
  OpponentProfile l1;
  l1.level = 1;
  l1.speed_fraction = 0.6;
  l1.max_aim_error = 30.0;
  l1.fov = 30.0;
  l1.turn_rate = 180.0;

  OpponentProfile l3;
  l3.level = 3;
  l3.speed_fraction = 0.8;
  l3.strafes = true;
  l3.max_aim_error = 15.0;
  l3.fov = 40.0;
  l3.turn_rate = 270.0;
  l3.strafe_period = 1.5;

  OpponentProfile l5;
  l5.level = 5;
  l5.speed_fraction = 1.0;
  l5.strafes = true;
  l5.dodges = true;
  l5.closes_distance = true;
  l5.max_aim_error = 12.0;
  l5.fov = 80.0;
  l5.turn_rate = 360.0;
  l5.jump_chance = 0.5;
  l5.strafe_period = 0.5;
  l5.preferred_distance = 900.0;
  return {l1, l3, l5};
}

const OpponentProfile& Config::opponent(int level) const {
  for (const auto& p : opponents) {
    if (p.level == level) return p;
  }
  throw std::invalid_argument("opponent level must be 1, 3 or 5, got " + std::to_string(level));
}

void Config::validate() const {
  priority.validate(armory);
  auto in_pit = [&](Vec2 p) {
    for (const auto& pit : arena.pits) {
      if (pit.contains(p)) return true;
    }
    return false;
  };
  auto inside = [&](Vec2 p) {
    return p.x >= physics.body_radius && p.y >= physics.body_radius && p.x <= arena.width - physics.body_radius &&
           p.y <= arena.height - physics.body_radius;
  };
  if (arena.spawns.empty()) throw std::invalid_argument("map needs at least one spawn point");
  for (auto s : arena.spawns) {
    if (!inside(s) || in_pit(s)) throw std::invalid_argument("spawn point outside the walkable region");
    for (const auto& w : arena.walls) {
      if (distance_to_segment(s, w) < physics.body_radius) throw std::invalid_argument("spawn point inside a wall");
    }
  }
  if (arena.waypoints.empty()) throw std::invalid_argument("map needs waypoints");
  for (const auto* list : {&arena.weapon_pickups, &arena.ammo_pickups}) {
    for (const auto& p : *list) {
      if (armory.item_index(p.item) < 0) throw std::invalid_argument("pickup names unknown item " + p.item);
      if (!inside(p.pos) || in_pit(p.pos)) throw std::invalid_argument("pickup outside the walkable region");
    }
  }
  if (!(physics.tick_hz > 0.0) || physics.decision_ticks < 1) throw std::invalid_argument("bad physics timing");
  if (!(physics.sight_range > 0.0)) throw std::invalid_argument("sight_range must be positive");
  if (!(rl.aim_error >= 0.0) || !(rl.tracking_lag >= 0.0)) throw std::invalid_argument("negative learner aim noise");
  for (int level : {1, 3, 5}) (void)opponent(level);
  if (harness.games < 1 || !(harness.minutes > 0.0) || !(harness.scale > 0.0)) {
    throw std::invalid_argument("harness games, minutes and scale must be positive");
  }
  if (harness.snapshot_every < 1) throw std::invalid_argument("snapshot_every must be >= 1");
}

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Reader {
  std::string where;

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where + ": " + msg); }

  double number(std::string_view s) const {
    auto t = trim(s);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) fail("expected a number, got '" + t + "'");
    return v;
  }
  int integer(std::string_view s) const {
    auto t = trim(s);
    int v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) fail("expected an integer, got '" + t + "'");
    return v;
  }
  bool boolean(std::string_view s) const {
    auto t = trim(s);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    fail("expected true or false, got '" + t + "'");
  }
  std::vector<double> numbers(std::string_view s, std::size_t expected) const {
    std::vector<double> out;
    for (const auto& tok : split(s, ' ')) out.push_back(number(tok));
    if (out.size() != expected) fail("expected " + std::to_string(expected) + " numbers in '" + trim(s) + "'");
    return out;
  }
};

using Setter = std::function<void(const Reader&, const std::string&)>;
using SectionKeys = std::map<std::string, Setter>;

template <typename T>
Setter num(T& field) {
  return [&field](const Reader& r, const std::string& v) {
    if constexpr (std::is_same_v<T, int>) {
      field = r.integer(v);
    } else {
      field = r.number(v);
    }
  };
}
Setter flag(bool& field) {
  return [&field](const Reader& r, const std::string& v) { field = r.boolean(v); };
}
Setter names(std::vector<std::string>& field) {
  return [&field](const Reader&, const std::string& v) { field = split(v, ','); };
}

SectionKeys opponent_keys(OpponentProfile& p) {
  return {
      {"speed_fraction", num(p.speed_fraction)},
      {"strafes", flag(p.strafes)},
      {"dodges", flag(p.dodges)},
      {"closes_distance", flag(p.closes_distance)},
      {"max_aim_error", num(p.max_aim_error)},
      {"fov", num(p.fov)},
      {"turn_rate", num(p.turn_rate)},
      {"dodge_radius", num(p.dodge_radius)},
      {"preferred_distance", num(p.preferred_distance)},
      {"strafe_period", num(p.strafe_period)},
      {"jump_chance", num(p.jump_chance)},
  };
}

SectionKeys weapon_keys(WeaponSpec& w) {
  return {
      {"item", [&w](const Reader&, const std::string& v) { w.item = trim(v); }},
      {"category",
       [&w](const Reader& r, const std::string& v) {
         auto c = parse_category(trim(v));
         if (!c) r.fail("unknown weapon category '" + trim(v) + "'");
         w.category = *c;
       }},
      {"instant_hit", flag(w.instant_hit)},
      {"damage", num(w.damage_per_hit)},
      {"fire_interval", num(w.fire_interval)},
      {"projectile_speed", num(w.projectile_speed)},
      {"splash_radius", num(w.splash_radius)},
      {"self_damage", flag(w.self_damage)},
      {"aim_skew", num(w.aim_skew)},
      {"above_step", num(w.above_step)},
      {"pellets", num(w.pellets)},
      {"spread_deg", num(w.spread_deg)},
      {"range", num(w.range)},
  };
}

SectionKeys item_keys(ItemSpec& it) {
  return {
      {"spawn_with", flag(it.spawn_with)},     {"infinite_ammo", flag(it.infinite_ammo)},
      {"initial_ammo", num(it.initial_ammo)},  {"max_ammo", num(it.max_ammo)},
      {"pickup_ammo", num(it.pickup_ammo)},    {"pack_ammo", num(it.pack_ammo)},
  };
}

std::vector<Vec2> parse_points(const Reader& r, const std::string& v) {
  std::vector<Vec2> out;
  for (const auto& p : split(v, '|')) {
    auto n = r.numbers(p, 2);
    out.push_back({n[0], n[1]});
  }
  return out;
}

std::vector<PickupSpot> parse_pickups(const Reader& r, const std::string& v) {
  std::vector<PickupSpot> out;
  for (const auto& p : split(v, '|')) {
    auto toks = split(p, ' ');
    if (toks.size() != 3) r.fail("expected '<item> <x> <y>' in '" + p + "'");
    out.push_back({toks[0], {r.number(toks[1]), r.number(toks[2])}});
  }
  return out;
}

}  // namespace

Config parse_config(std::string_view text, std::string_view source) {
  pt::ptree tree;
  {
    std::istringstream in{std::string(text)};
    try {
      pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(e.line()) + ": " + e.message());
    }
  }

  Config cfg;
  double alpha = cfg.learner.alpha(), gamma = cfg.learner.gamma(), lambda = cfg.learner.lambda();
  ExplorationSchedule schedule = cfg.learner.schedule();
  std::vector<WeaponSpec> weapons = cfg.armory.weapons();
  std::vector<ItemSpec> items = cfg.armory.items();

  SectionKeys learner_keys{{"alpha", num(alpha)}, {"gamma", num(gamma)}, {"lambda", num(lambda)}};
  SectionKeys schedule_keys{{"bands", [&](const Reader& r, const std::string& v) {
                               std::vector<ExplorationBand> bands;
                               for (const auto& b : split(v, '|')) {
                                 auto n = r.numbers(b, 2);
                                 if (n[0] < 0.0) r.fail("negative lives bound");
                                 bands.push_back({static_cast<std::uint64_t>(n[0]), n[1]});
                               }
                               try {
                                 schedule = ExplorationSchedule(std::move(bands));
                               } catch (const std::invalid_argument& e) {
                                 r.fail(e.what());
                               }
                             }}};
  SectionKeys encoder_keys{{"direction_dead_zone", num(cfg.direction_dead_zone)}};
  auto& ph = cfg.physics;
  SectionKeys physics_keys{
      {"tick_hz", num(ph.tick_hz)},           {"decision_ticks", num(ph.decision_ticks)},
      {"base_speed", num(ph.base_speed)},     {"jump_duration", num(ph.jump_duration)},
      {"jump_height", num(ph.jump_height)},   {"respawn_delay", num(ph.respawn_delay)},
      {"eye_height", num(ph.eye_height)},     {"body_radius", num(ph.body_radius)},
      {"body_height", num(ph.body_height)},   {"max_health", num(ph.max_health)},
      {"projectile_lifetime", num(ph.projectile_lifetime)}, {"muzzle_offset", num(ph.muzzle_offset)},
      {"sight_range", num(ph.sight_range)},
  };
  auto& rl = cfg.rl;
  SectionKeys rl_keys{
      {"speed_fraction", num(rl.speed_fraction)}, {"fov", num(rl.fov)},
      {"turn_rate", num(rl.turn_rate)},           {"aim_error", num(rl.aim_error)},
      {"tracking_lag", num(rl.tracking_lag)},
      {"strafes", flag(rl.strafes)},              {"strafe_period", num(rl.strafe_period)},
      {"jump_chance", num(rl.jump_chance)},
  };
  auto& hv = cfg.harness;
  SectionKeys harness_keys{{"games", num(hv.games)},
                           {"minutes", num(hv.minutes)},
                           {"scale", num(hv.scale)},
                           {"snapshot_every", num(hv.snapshot_every)}};
  auto& pr = cfg.priority;
  SectionKeys priority_keys{{"close", names(pr.close)},
                            {"medium", names(pr.medium)},
                            {"far", names(pr.far)},
                            {"fallback", names(pr.fallback)}};
  auto& ar = cfg.arena;
  SectionKeys map_keys{
      {"width", num(ar.width)},
      {"height", num(ar.height)},
      {"pickup_respawn", num(ar.pickup_respawn)},
      {"pickup_radius", num(ar.pickup_radius)},
      {"walls",
       [&](const Reader& r, const std::string& v) {
         ar.walls.clear();
         for (const auto& s : split(v, '|')) {
           auto n = r.numbers(s, 4);
           ar.walls.push_back({{n[0], n[1]}, {n[2], n[3]}});
         }
       }},
      {"pits",
       [&](const Reader& r, const std::string& v) {
         ar.pits.clear();
         for (const auto& s : split(v, '|')) {
           auto n = r.numbers(s, 4);
           if (!(n[0] < n[2] && n[1] < n[3])) r.fail("pit rectangle needs x0 < x1 and y0 < y1");
           ar.pits.push_back({n[0], n[1], n[2], n[3]});
         }
       }},
      {"spawns", [&](const Reader& r, const std::string& v) { ar.spawns = parse_points(r, v); }},
      {"waypoints", [&](const Reader& r, const std::string& v) { ar.waypoints = parse_points(r, v); }},
      {"weapon_pickups", [&](const Reader& r, const std::string& v) { ar.weapon_pickups = parse_pickups(r, v); }},
      {"ammo_pickups", [&](const Reader& r, const std::string& v) { ar.ammo_pickups = parse_pickups(r, v); }},
  };

  auto apply = [&](const std::string& section, const pt::ptree& body, const SectionKeys& keys) {
    for (const auto& [key, value] : body) {
      Reader r{std::string(source) + ": [" + section + "] " + key};
      auto it = keys.find(key);
      if (it == keys.end()) r.fail("unknown key");
      it->second(r, value.data());
    }
  };

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(std::string(source) + ": key '" + section + "' outside any section");
    }
    if (section == "learner") {
      apply(section, body, learner_keys);
    } else if (section == "schedule") {
      apply(section, body, schedule_keys);
    } else if (section == "encoder") {
      apply(section, body, encoder_keys);
    } else if (section == "physics") {
      apply(section, body, physics_keys);
    } else if (section == "rl") {
      apply(section, body, rl_keys);
    } else if (section == "harness") {
      apply(section, body, harness_keys);
    } else if (section == "priority") {
      apply(section, body, priority_keys);
    } else if (section == "map") {
      apply(section, body, map_keys);
    } else if (section.rfind("opponent:", 0) == 0) {
      int level = Reader{std::string(source) + ": [" + section + "]"}.integer(section.substr(9));
      OpponentProfile* target = nullptr;
      for (auto& p : cfg.opponents) {
        if (p.level == level) target = &p;
      }
      if (!target) throw ConfigError(std::string(source) + ": [" + section + "] level must be 1, 3 or 5");
      apply(section, body, opponent_keys(*target));
    } else if (section.rfind("weapon:", 0) == 0) {
      auto name = section.substr(7);
      auto it = std::find_if(weapons.begin(), weapons.end(), [&](const WeaponSpec& w) { return w.name == name; });
      if (it == weapons.end()) {
        WeaponSpec w;
        w.name = name;
        w.item = name;
        weapons.push_back(w);
        it = std::prev(weapons.end());
      }
      apply(section, body, weapon_keys(*it));
    } else if (section.rfind("item:", 0) == 0) {
      auto name = section.substr(5);
      auto it = std::find_if(items.begin(), items.end(), [&](const ItemSpec& i) { return i.name == name; });
      if (it == items.end()) {
        ItemSpec i;
        i.name = name;
        items.push_back(i);
        it = std::prev(items.end());
      }
      apply(section, body, item_keys(*it));
    } else {
      throw ConfigError(std::string(source) + ": unknown section [" + section + "]");
    }
  }

  try {
    cfg.learner = LearnerConfig(alpha, gamma, lambda, schedule);
    cfg.armory = Armory(std::move(weapons), std::move(items));
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace sarsa_arena
