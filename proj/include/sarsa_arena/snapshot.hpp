#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sarsa_arena/rl_core.hpp"

namespace sarsa_arena {

// Text layout, one record per line:
//
//   RLSQ 1
//   lives <count>
//   params <alpha> <gamma> <lambda>
//   category <name>            (all six, in WeaponCategory order)
//   q <state> <action> <value> (non-zero values only, ascending)
//
// Doubles are written as their shortest round-trip decimal, so a restore
// reproduces every q bit for bit. Traces and visit counts are not stored.

class SnapshotError : public std::runtime_error {
 public:
  enum class Kind { UnknownVersion, Malformed, OutOfRange };

  SnapshotError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based line of the offending record.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct SnapshotDocument {
  std::uint64_t lives = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  TableSet tables;
};

std::string snapshot(const TableSet& tables, std::uint64_t lives, const LearnerConfig& cfg);

/// Parses a snapshot. Restored tables carry no traces and zero visit counts.
SnapshotDocument restore(std::string_view text);

void write_snapshot_file(const std::filesystem::path& path, const TableSet& tables,
                         std::uint64_t lives, const LearnerConfig& cfg);
SnapshotDocument read_snapshot_file(const std::filesystem::path& path);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace sarsa_arena
