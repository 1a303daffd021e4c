#include <iostream>

#include "chyp/cli.hpp"

int main(int argc, char** argv) { return chyp::run_cli(argc, argv, std::cout, std::cerr); }
