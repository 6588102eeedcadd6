#include <iostream>

#include "cabinco2/cli.hpp"

int main(int argc, char** argv) { return cabinco2::cli::run(argc, argv, std::cout, std::cerr); }
