#pragma once

#include <ostream>

namespace mapforge {

enum ExitCode : int {
    kExitOk = 0,
    kExitIdentityFailure = 1,
    kExitConfigError = 2,
    kExitIOError = 3,
};

/// Entry point of the mapforge command line tool. Output goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mapforge
