#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace candy::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,          // bad arguments or input
  kCounterexample = 2, // a verification found a non-stabilizing distribution
  kBudget = 3,         // round budget or enumeration cap exceeded
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace candy::cli
