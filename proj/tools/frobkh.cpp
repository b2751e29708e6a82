#include <iostream>

#include "frobkh/cli.hpp"

int main(int argc, char** argv) { return frobkh::run_cli(argc, argv, std::cout, std::cerr); }
