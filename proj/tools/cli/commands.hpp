#pragma once

#include <ostream>

namespace cshrink::cli {

// Parses the command line and runs one subcommand. Returns the process exit
// status: 0 success, 1 usage or configuration error, 2 data error,
// 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cshrink::cli
