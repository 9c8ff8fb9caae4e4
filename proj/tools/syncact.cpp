#include <iostream>
#include <string>
#include <vector>

#include "syncact/cli.hpp"

int main(int argc, char** argv) {
  return syncact::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
