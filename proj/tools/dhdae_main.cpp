#include <iostream>

#include "dhdae/cli.hpp"

int main(int argc, char** argv) { return dhdae::cli::main_entry(argc, argv, std::cout, std::cerr); }
