#include <iostream>

#include "twinbeam/cli/commands.hpp"

int main(int argc, char** argv) { return twinbeam::cli::run_cli(argc, argv, std::cout, std::cerr); }
