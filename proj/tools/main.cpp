#include <iostream>

#include "remedysim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return remedysim::run_cli(args, std::cout, std::cerr);
}
