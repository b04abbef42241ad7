#include <iostream>
#include <vector>

#include "qps/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qps::cli::run(std::move(args), std::cout, std::cerr);
}
