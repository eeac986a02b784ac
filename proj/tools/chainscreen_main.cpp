#include <iostream>

#include "chainscreen/cli.hpp"

int main(int argc, char** argv) { return chainscreen::cli::run(argc, argv, std::cout, std::cerr); }
