#include <iostream>

#include "pturan/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pturan::run_cli(args, std::cout, std::cerr);
}
