#include <iostream>
#include <string>
#include <vector>

#include "broncho/cli.hpp"

int main(int argc, char** argv) {
  return broncho::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
