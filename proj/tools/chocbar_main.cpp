#include <iostream>

#include "chocbar/cli.hpp"

int main(int argc, char** argv) { return chocbar::run_cli(argc, argv, std::cout, std::cerr); }
