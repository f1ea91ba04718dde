#include <iostream>
#include <string>
#include <vector>

#include "phasetomo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phasetomo::cli::dispatch(args, std::cout, std::cerr);
}
