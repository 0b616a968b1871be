#include <iostream>

#include "tauttrack/cli.hpp"

int main(int argc, char** argv) { return tauttrack::cli::main(argc, argv, std::cout, std::cerr); }
