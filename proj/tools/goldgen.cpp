#include <iostream>

#include "goldgen/cli.hpp"

int main(int argc, char** argv) { return goldgen::run_cli(argc, argv, std::cout, std::cerr); }
