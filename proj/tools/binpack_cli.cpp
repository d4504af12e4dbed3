#include <iostream>

#include "binpack/harness.hpp"

int main(int argc, char** argv) { return binpack::run_cli(argc, argv, std::cout, std::cerr); }
