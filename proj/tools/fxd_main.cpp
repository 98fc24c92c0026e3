#include <iostream>

#include "fxd/cli.hpp"

int main(int argc, char** argv) { return fxd::run_cli(argc, argv, std::cout, std::cerr); }
