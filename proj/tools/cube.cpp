#include <iostream>
#include <string>
#include <vector>

#include "cube/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cube::main_entry(args, std::cout, std::cerr);
}
