#include <iostream>

#include "chromacut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chromacut::run_cli(args, std::cout, std::cerr);
}
