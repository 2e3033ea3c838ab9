#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdescrypt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (args[0] is the program name) and runs one subcommand.
/// Reports go to `out`; diagnostics are a single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdescrypt::cli
