#include <iostream>
#include <string>
#include <vector>

#include "cspace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const cspace::CliOutcome r = cspace::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
