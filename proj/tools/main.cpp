#include <iostream>

#include "ucx/cli.hpp"

int main(int argc, char** argv) { return ucx::cli::run(argc, argv, std::cout, std::cerr); }
