#include <risphase/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return risphase::cli::run_cli(argc, argv, std::cout, std::cerr); }
