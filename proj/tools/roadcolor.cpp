#include <iostream>
#include <string>
#include <vector>

#include "roadcolor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return roadcolor::cli::run(args, std::cout, std::cerr);
}
