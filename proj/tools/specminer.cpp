//===-- specminer.cpp - Tool entry point ----------------------------------===//

#include "specminer/cli.h"

#include <iostream>

int main(int argc, char **argv) {
  return specminer::cli::run(argc, argv, std::cout, std::cerr);
}
