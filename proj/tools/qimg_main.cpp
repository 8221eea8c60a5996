#include <iostream>
#include <string>
#include <vector>

#include "qimg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qimg::run_cli(args, std::cout, std::cerr);
}
