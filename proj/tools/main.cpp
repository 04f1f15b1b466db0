#include "tancascade/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tancascade::cli_main(argc, argv, std::cout, std::cerr); }
