#include <iostream>

#include "veeswarm/cli.hpp"

int main(int argc, char** argv) { return veeswarm::cli_main(argc, argv, std::cout, std::cerr); }
