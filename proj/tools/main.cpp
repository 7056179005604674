#include <iostream>
#include <string>
#include <vector>

#include "assign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return assign::run_command(args, std::cout, std::cerr);
}
