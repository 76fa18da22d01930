#include <iostream>

#include "wellposed_cli/cli.hpp"

int main(int argc, char** argv) {
  return wellposed::cli::run(argc, argv, std::cout, std::cerr);
}
