#include <iostream>
#include <string>
#include <vector>

#include "pgst/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pgst::cli::run(args, std::cout, std::cerr);
}
