#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace erm::cli {

// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kGraphInvalid = 3,
  kNumerical = 4,
  kCounterexample = 10,
};

// Runs one command line (without the program name). Everything is written to
// `out`/`err`; files are written only where --out asks for them.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// 15 significant digits, "." separator, no "-0".
std::string format_short(double x);
// Shortest text that parses back to the same double.
std::string format_full(double x);

}  // namespace erm::cli
