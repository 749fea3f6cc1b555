#include "pudg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pudg::cli::run(argc, argv, std::cout, std::cerr); }
