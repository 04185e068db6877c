/** @file ope_forge.cpp
 *  @brief Entry point of the ope-forge command-line tool. */
#include <iostream>
#include <string>
#include <vector>

#include "opeforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opeforge::run_cli(args, std::cout, std::cerr);
}
