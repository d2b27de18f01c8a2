#include <iostream>
#include <string>
#include <vector>

#include "gkritz/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return gkritz::cli::main_entry(args, std::cout, std::cerr);
}
