#include <iostream>

#include "qde/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = qde::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exitCode;
}
