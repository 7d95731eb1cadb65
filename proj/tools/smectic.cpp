#include <iostream>
#include <string>
#include <vector>

#include "smectic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smectic::cli::run(args, std::cout, std::cerr);
}
