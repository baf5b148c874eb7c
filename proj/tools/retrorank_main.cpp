#include <iostream>

#include "retrorank/cli.hpp"

int main(int argc, char** argv) { return retrorank::run_cli(argc, argv, std::cout, std::cerr); }
