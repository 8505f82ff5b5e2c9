#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yamacone {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInapplicable = 3;
inline constexpr int kExitConvergence = 4;

/// Runs `yamacone <command> [flags]` with `args` excluding the program name.
/// Reports go to `out` (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace yamacone
