#pragma once

#include <string>
#include <vector>

namespace qde::cli {

struct CommandResult {
  int exitCode = 0;
  std::string out;
  std::string err;
};

// Runs one command line (without the program name). Exit codes: 0 ok,
// 1 solver error, 2 usage error.
CommandResult run(const std::vector<std::string>& args);

// Shortest form that keeps 17 significant digits; '.' decimal point, "nan"/"inf" for non-finite.
std::string format_double(double x);

}  // namespace qde::cli
