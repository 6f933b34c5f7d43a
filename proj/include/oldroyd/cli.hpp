#pragma once

#include <ostream>

namespace oldroyd {

// Entry point of the command-line tool. Subcommands:
//   run <config>
//   norms <snapshot> --besov s,p,r [--besov ...] [--homogeneous yes|no|both] [--component name]
//   dispersion --kmax K [--dk D] [--alpha A --mu M --nu N --a A]
//   summarize <csv> [--config file]
// Exit codes: 0 success, 2 configuration or input error, 3 blow-up,
// 4 check failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oldroyd
