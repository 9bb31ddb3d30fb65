#pragma once

#include <ostream>

namespace qdual::cli {

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsage = 2, kDivergence = 3 };

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdual::cli
