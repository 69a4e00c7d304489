#include <iostream>
#include <string>
#include <vector>

#include "dml/cli/run.hpp"

int main(int argc, char** argv) {
  return dml::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
