#include <iostream>
#include <string>
#include <vector>

#include "hs_sharp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hs_sharp::run_cli(args, std::cout, std::cerr);
}
