#include <iostream>

#include "quadmod/cli.hpp"

int main(int argc, char** argv) { return quadmod::cli::dispatch(argc, argv, std::cout, std::cerr); }
