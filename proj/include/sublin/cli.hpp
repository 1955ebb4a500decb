#pragma once

#include <ostream>

namespace sublin {

/// Subcommand dispatch for the `sublin` binary. Returns the process exit
/// code: 0 pass, 1 verified violation, 2 input or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sublin
