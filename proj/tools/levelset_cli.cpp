#include <iostream>
#include <string>
#include <vector>

#include "levelset/app/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return levelset::app::run_cli(args, std::cout, std::cerr);
}
