#include "plurikernel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return plurikernel::cli::run(argc, argv, std::cout, std::cerr); }
