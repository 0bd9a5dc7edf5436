#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nnn::cli::run(args, std::cout, std::cerr, nnn::cli::Terminal{isatty(STDERR_FILENO) == 1});
}
