#include <iostream>

#include "bovw/cli.hpp"

int main(int argc, char** argv) { return bovw::run_cli(argc, argv, std::cout, std::cerr); }
