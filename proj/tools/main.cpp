#include <iostream>
#include <string>
#include <vector>

#include "polyinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polyinv::run_command(args, std::cout, std::cerr);
}
