#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exactpde {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitOutput = 4,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string families_listing();

}  // namespace exactpde
