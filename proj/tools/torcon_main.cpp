#include <iostream>

#include "torcon/cli.hpp"

int main(int argc, char** argv) { return torcon::cli_main(argc, argv, std::cout, std::cerr); }
