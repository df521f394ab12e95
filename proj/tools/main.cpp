#include <iostream>

#include "specinv/cli.hpp"

int main(int argc, char** argv) { return specinv::cli::main(argc, argv, std::cout, std::cerr); }
