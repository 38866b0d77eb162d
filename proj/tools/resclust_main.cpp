#include <iostream>

#include "resclust/cli.hpp"

int main(int argc, char** argv) { return resclust::cli::run_main(argc, argv, std::cout, std::cerr); }
