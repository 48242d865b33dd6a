#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scalereq {

// Process exit codes.
enum class ExitCode : int {
  Success = 0,
  ValidationFailure = 1,
  EvaluationFailure = 2,
  UsageOrIo = 3,
};

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Same, on the process streams. Error labels on a terminal are colored unless
// SCALEREQ_NO_COLOR is set.
int run(const std::vector<std::string>& args);

}  // namespace scalereq
