#include <iostream>
#include <string>
#include <vector>

#include "exactpde/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return exactpde::run_cli(args, std::cout, std::cerr);
}
