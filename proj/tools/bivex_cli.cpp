#include <iostream>
#include <string>
#include <vector>

#include "bivex/app/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bivex::app::run_cli(args, std::cout, std::cerr);
}
