#pragma once

#include <iosfwd>

namespace grassfault::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

// Full command-line entry point: parses argv, dispatches the subcommand and
// maps exceptions onto exit codes, writing a single-line `error: ...` to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grassfault::cli
