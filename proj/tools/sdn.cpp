#include <iostream>

#include "sdn/cli.hpp"

int main(int argc, char** argv) { return sdn::cli::run(argc, argv, std::cout, std::cerr); }
