#include <iostream>

#include "ivote/cli.hpp"

int main(int argc, char** argv) { return ivote::cli::run(argc, argv, std::cout, std::cerr); }
