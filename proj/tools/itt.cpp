#include <iostream>
#include <string>
#include <vector>

#include "itt/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return itt::itt_main(std::move(args), std::cout, std::cerr);
}
