#include <iostream>

#include "fnrep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fnrep::cli::dispatch(args, std::cout, std::cerr);
}
