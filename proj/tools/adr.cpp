#include <iostream>
#include <string>
#include <vector>

#include "adr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return adr::cli::run(args, std::cout, std::cerr);
}
