#include <iostream>

#include "msect/cli/app.hpp"

int main(int argc, char** argv) { return msect::cli::run(argc, argv, std::cout, std::cerr); }
