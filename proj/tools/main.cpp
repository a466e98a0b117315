#include "liouville/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return liouville::cli::main(argc, argv, std::cout, std::cerr); }
