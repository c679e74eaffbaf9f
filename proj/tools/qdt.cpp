#include <iostream>

#include "qdt/cli.hpp"

int main(int argc, char** argv) {
  return qdt::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
