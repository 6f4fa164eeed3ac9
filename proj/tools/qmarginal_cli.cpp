#include <iostream>

#include "qmarginal/cli.hpp"

int main(int argc, char** argv) { return qmarg::cli::run(argc, argv, std::cout, std::cerr); }
