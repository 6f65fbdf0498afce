#include <iostream>
#include <string>
#include <vector>

#include "sarsa_arena/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sarsa_arena::run_cli(args, std::cout, std::cerr);
}
