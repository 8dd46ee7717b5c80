#include <iostream>

#include "ptree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ptree::run(args, std::cout, std::cerr);
}
