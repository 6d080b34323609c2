#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tetroc {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_error = 1,           ///< bad input data, I/O failure or internal error
  exit_usage = 2,           ///< unknown subcommand, flag or malformed argument
  exit_not_interlocked = 3  ///< `check` found an escape motion
};

/// Runs the tool on `args` (without the program name); writes to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tetroc
