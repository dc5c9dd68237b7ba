#include <iostream>
#include <string>
#include <vector>

#include "hyperel/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return hyperel::dispatch(args, std::cout, std::cerr);
}
