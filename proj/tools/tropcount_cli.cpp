#include <iostream>

#include "tropcount/cli.hpp"

int main(int argc, char** argv) {
  return tropcount::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
