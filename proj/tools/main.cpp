#include <iostream>
#include <string>
#include <vector>

#include "envelope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return envelope::cli::run(args, std::cout, std::cerr);
}
