#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scc::cli {

/// Process exit codes.
enum ExitCode : int
{
  kOk = 0,
  kInternal = 1,      // unexpected failure
  kUsage = 2,         // unknown flag, missing argument
  kInvalidConfig = 3, // value outside its allowed range
  kIo = 4,            // missing or unreadable file
  kFormat = 5,        // malformed container or JSON
  kShape = 6,         // incompatible grids
  kNumerical = 7,     // solver divergence, degenerate data
};

/// Runs one subcommand. `args` excludes the program name.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace scc::cli
