#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace contactcount {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_verification = 2,
};

/// Entry point of `contact-count`. `args` excludes the program name.
/// Results go to `out`, warnings and timing to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contactcount
