#include <iostream>

#include "mapforge/cli.hpp"

int main(int argc, char **argv) { return mapforge::run_cli(argc, argv, std::cout, std::cerr); }
