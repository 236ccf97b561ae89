#include <iostream>

#include "fkdist/cli.hpp"

int main(int argc, char** argv) { return fkdist::cli::run(argc, argv, std::cout, std::cerr); }
