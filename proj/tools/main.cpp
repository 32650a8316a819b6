#include <iostream>
#include <string>
#include <vector>

#include "wlpa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wlpa::cli::run(args, std::cin, std::cout, std::cerr);
}
