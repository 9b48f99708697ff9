#include "lagnewton/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return lagnewton::cli::run_main(argc, argv, std::cout, std::cerr); }
