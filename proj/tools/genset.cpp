#include <iostream>

#include "genset/cli.hpp"

int main(int argc, char** argv) { return genset::run_cli(argc, argv, std::cout, std::cerr); }
