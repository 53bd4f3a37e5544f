#include <iostream>

#include "okh/cli.hpp"

int main(int argc, char** argv) { return okh::run_cli(argc, argv, std::cout, std::cerr); }
