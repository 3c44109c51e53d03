#include <iostream>

#include "hyplab_cli/cli.hpp"

int main(int argc, char** argv) { return hyplab::cli::run_cli(argc, argv, std::cout, std::cerr); }
