#include <iostream>

#include "csvdialect/cli.hpp"

int main(int argc, char** argv) { return csvdialect::run_cli(argc, argv, std::cout, std::cerr); }
