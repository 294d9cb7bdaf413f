#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magwell::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,       // I/O or numeric failure
  kConfigError = 2,   // malformed or out-of-range configuration
  kNoBoundState = 3,  // the spectral equation has no root in the bracket
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Reports go to `out` unless --out names a file; diagnostics
/// go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magwell::cli
