#include <iostream>

#include "aap/commands.hpp"

int main(int argc, char** argv) { return aap::run_cli(argc, argv, std::cout, std::cerr); }
