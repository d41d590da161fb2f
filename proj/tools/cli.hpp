#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruelle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// Parses the command line, runs one subcommand and writes its report.
/// Reports go to --out (or `out` when absent); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ruelle::cli
