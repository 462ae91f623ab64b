#include <iostream>
#include <string>
#include <vector>

#include "migraine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return migraine::cli::run_command(args, std::cout, std::cerr);
}
