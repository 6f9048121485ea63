#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trustrev::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kSemanticError = 2,
};

// Runs one command line (args[0] is the program name). Output goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trustrev::cli
