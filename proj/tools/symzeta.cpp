#include <iostream>

#include "symzeta/cli.hpp"

int main(int argc, char** argv) { return symzeta::cli::run(argc, argv, std::cout, std::cerr); }
