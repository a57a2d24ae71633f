#include <iostream>
#include <string>
#include <vector>

#include "stochmep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stochmep::run_cli(args, std::cout, std::cerr);
}
