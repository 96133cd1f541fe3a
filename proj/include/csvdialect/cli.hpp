#pragma once

#include <iosfwd>

namespace csvdialect {

/// Exit status of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// Detection did not produce a dialect (tie or empty input).
  kExitUndetected = 1,
  /// Usage, I/O or decode error.
  kExitError = 2,
};

/// Runs the csvdialect command line. Results go to `out`, diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csvdialect
