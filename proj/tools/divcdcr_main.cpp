#include <iostream>
#include <string>
#include <vector>

#include "divcdcr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return divcdcr::run_cli(args, std::cout, std::cerr);
}
