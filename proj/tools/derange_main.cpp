#include <iostream>

#include "derange/cli.hpp"

int main(int argc, char** argv) {
  return derange::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
