#include <iostream>

#include "noneq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return noneq::cli::run(args, std::cout, std::cerr);
}
