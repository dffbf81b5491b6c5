#include <string>
#include <vector>

#include "resparse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return resparse::run_cli(args);
}
