#include <iostream>

#include "cdc/cli.hpp"

int main(int argc, char** argv) { return cdc::cli::main_entry(argc, argv, std::cout, std::cerr); }
