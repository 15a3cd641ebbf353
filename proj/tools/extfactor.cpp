#include <iostream>

#include "extfactor/cli.hpp"

int main(int argc, char** argv) {
    return extfactor::cli::run(argc, argv, std::cout, std::cerr);
}
