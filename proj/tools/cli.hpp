#pragma once

#include <iosfwd>

namespace entnorm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitVerifyFailed = 3,
};

/// Runs `ent-norm` with the given arguments (argv[0] is the program name).
/// Results go to `out` unless --output names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entnorm::cli
