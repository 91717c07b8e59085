#include <iostream>

#include "vh/cli.hpp"

int main(int argc, char** argv) { return vh::cli::run(argc, argv, std::cout, std::cerr); }
