#include <iostream>

#include "poslp/cli.hpp"

int main(int argc, char** argv) { return poslp::run(argc, argv, std::cout, std::cerr); }
