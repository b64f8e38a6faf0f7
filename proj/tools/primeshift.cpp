#include <iostream>

#include "primeshift/cli.hpp"

int main(int argc, char** argv) {
    return primeshift::cli::run(argc, argv, std::cout, std::cerr);
}
