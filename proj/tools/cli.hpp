#pragma once

#include <ostream>

#include "gimag/error.hpp"

namespace gimag::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,   // verification failure, or a NotReal classification
  exit_invalid_input = 2,
  exit_numerical = 3,      // oracle non-convergence or insufficient cutoff
};

int exit_code_for(Errc code);

/// Runs one command line. All output goes to `out` / `err`, never to the process streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gimag::cli
