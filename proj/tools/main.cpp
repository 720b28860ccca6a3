#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return phiconv::cli::run(argc, argv, std::cout, std::cerr);
}
