#include <iostream>

#include "oabqa/cli.hpp"

int main(int argc, char** argv) { return oabqa::cli::run(argc, argv, std::cout, std::cerr); }
