#include <iostream>

#include "cnoidal/cli.hpp"

int main(int argc, char** argv) { return cnoidal::cli_main(argc, argv, std::cout, std::cerr); }
