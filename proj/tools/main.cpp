#include <iostream>
#include <vector>

#include "facet/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return facet::cli_dispatch(args, std::cout, std::cerr);
}
