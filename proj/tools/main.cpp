#include <iostream>

#include "pegsa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pegsa::run_cli(args, std::cout, std::cerr);
}
