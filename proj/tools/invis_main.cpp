#include <iostream>

#include "invis/cli.hpp"

int main(int argc, char** argv) { return invis::run_cli(argc, argv, std::cout, std::cerr); }
