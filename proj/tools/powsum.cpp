#include <iostream>

#include "powsum/cli.hpp"

int main(int argc, char** argv) { return powsum::cli::main_entry(argc, argv, std::cout, std::cerr); }
