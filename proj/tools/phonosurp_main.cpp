#include <iostream>
#include <string>
#include <vector>

#include "phonosurp/pipeline.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phonosurp::run_cli(args, std::cout, std::cerr);
}
