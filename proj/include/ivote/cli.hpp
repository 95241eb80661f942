#pragma once

#include <iosfwd>

namespace ivote::cli {

/// Exit codes shared by all commands. Usage errors use CLI11's own codes.
enum Exit : int {
  ok = 0,
  violation = 1,
  bad_input = 2,
  incompatible = 3,
  undetermined = 4,
  budget_exceeded = 5,
};

/// Runs the command line `argv` with JSON results on `out` and diagnostics on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ivote::cli
