#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sarsa_arena {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the command-line tool. `args` excludes the program name.
/// Returns the process exit code: 0 success, 1 I/O or parse failure,
/// 2 invalid usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sarsa_arena
