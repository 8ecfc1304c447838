#pragma once

#include <iosfwd>

#include "cvqkd/config.hpp"

namespace cvqkd {

// Executes one subcommand. Exit codes: 0 success, 2 invalid configuration,
// 3 unphysical state or numeric failure, 4 per-cell failures recorded in
// the output. Without an output path the CSV goes to `out` verbatim.
int run_command(Subcommand cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace cvqkd
