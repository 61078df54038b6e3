#include <iostream>

#include "iarq/cli.hpp"

int main(int argc, char** argv) { return iarq::parse_and_run(argc, argv, std::cout, std::cerr); }
