#include "sarsa_arena/snapshot.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace sarsa_arena {

SnapshotError::SnapshotError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string snapshot(const TableSet& tables, std::uint64_t lives, const LearnerConfig& cfg) {
  std::string out;
  out += "RLSQ 1\n";
  out += "lives " + std::to_string(lives) + "\n";
  out += "params " + format_double(cfg.alpha()) + " " + format_double(cfg.gamma()) + " " +
         format_double(cfg.lambda()) + "\n";
  for (auto c : kAllCategories) {
    out += "category ";
    out += category_name(c);
    out += '\n';
    const QTable& t = tables[c];
    for (int s = 0; s < kStateCount; ++s) {
      auto q = t.q_values(StateId(s));
      for (int a = 0; a < kActionCount; ++a) {
        if (q[a] == 0.0) continue;
        out += "q " + std::to_string(s) + " " + std::to_string(a) + " " + format_double(q[a]) + "\n";
      }
    }
  }
  return out;
}

namespace {

using Kind = SnapshotError::Kind;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw SnapshotError(Kind::Malformed, line_no, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

SnapshotDocument restore(std::string_view text) {
  SnapshotDocument doc;
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw SnapshotError(Kind::Malformed, lines.size() + 1, "truncated line (missing newline)");
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }

  auto line_at = [&](std::size_t i) -> std::string_view {
    if (i >= lines.size()) throw SnapshotError(Kind::Malformed, i + 1, "unexpected end of document");
    return lines[i];
  };

  // Header.
  {
    auto f = split_fields(line_at(0));
    if (f.size() != 2 || f[0] != "RLSQ") throw SnapshotError(Kind::Malformed, 1, "missing RLSQ header");
    if (f[1] != "1") throw SnapshotError(Kind::UnknownVersion, 1, "unknown format version '" + std::string(f[1]) + "'");
  }
  {
    auto f = split_fields(line_at(1));
    if (f.size() != 2 || f[0] != "lives") throw SnapshotError(Kind::Malformed, 2, "expected 'lives <count>'");
    doc.lives = parse_number<std::uint64_t>(f[1], 2, "lives count");
  }
  {
    auto f = split_fields(line_at(2));
    if (f.size() != 4 || f[0] != "params") {
      throw SnapshotError(Kind::Malformed, 3, "expected 'params <alpha> <gamma> <lambda>'");
    }
    doc.alpha = parse_number<double>(f[1], 3, "alpha");
    doc.gamma = parse_number<double>(f[2], 3, "gamma");
    doc.lambda = parse_number<double>(f[3], 3, "lambda");
  }

  std::size_t i = 3;
  for (auto c : kAllCategories) {
    std::size_t line_no = i + 1;
    auto f = split_fields(line_at(i));
    if (f.size() != 2 || f[0] != "category") {
      throw SnapshotError(Kind::Malformed, line_no,
                          "expected 'category " + std::string(category_name(c)) + "'");
    }
    if (f[1] != category_name(c)) {
      throw SnapshotError(Kind::Malformed, line_no,
                          "expected category " + std::string(category_name(c)) + ", found '" +
                              std::string(f[1]) + "'");
    }
    ++i;
    QTable& table = doc.tables[c];
    long last_key = -1;
    while (i < lines.size()) {
      auto qf = split_fields(lines[i]);
      if (!qf.empty() && qf[0] == "category") break;
      line_no = i + 1;
      if (qf.size() != 4 || qf[0] != "q") throw SnapshotError(Kind::Malformed, line_no, "expected 'q <state> <action> <value>'");
      long state = parse_number<long>(qf[1], line_no, "state index");
      long action = parse_number<long>(qf[2], line_no, "action index");
      double value = parse_number<double>(qf[3], line_no, "q value");
      if (state < 0 || state >= kStateCount) {
        throw SnapshotError(Kind::OutOfRange, line_no, "state index " + std::to_string(state) + " outside [0, 1296)");
      }
      if (action < 0 || action >= kActionCount) {
        throw SnapshotError(Kind::OutOfRange, line_no, "action index " + std::to_string(action) + " outside [0, 5)");
      }
      if (!std::isfinite(value)) throw SnapshotError(Kind::Malformed, line_no, "non-finite q value");
      long key = state * kActionCount + action;
      if (key <= last_key) throw SnapshotError(Kind::Malformed, line_no, "q entries out of order or duplicated");
      last_key = key;
      table.set_q(StateId(static_cast<int>(state)), static_cast<int>(action), value);
      ++i;
    }
  }
  if (i != lines.size()) throw SnapshotError(Kind::Malformed, i + 1, "trailing content after last category");
  return doc;
}

void write_snapshot_file(const std::filesystem::path& path, const TableSet& tables, std::uint64_t lives,
                         const LearnerConfig& cfg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
  out << snapshot(tables, lives, cfg);
  if (!out) throw std::runtime_error("failed writing snapshot " + path.string());
}

SnapshotDocument read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return restore(ss.str());
}

}  // namespace sarsa_arena
