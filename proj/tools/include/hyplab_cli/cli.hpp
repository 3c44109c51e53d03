#pragma once

#include <ostream>

namespace hyplab::cli {

enum ExitCode : int { exit_pass = 0, exit_tolerance = 1, exit_usage = 2 };

// Full command-line front end; results go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyplab::cli
