#include <iostream>

#include "dunkl/cli.hpp"

int main(int argc, char** argv) { return dunkl::cli::run(argc, argv, std::cout, std::cerr); }
