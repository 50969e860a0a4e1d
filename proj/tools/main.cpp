#include <iostream>

#include "dicke/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return dicke::cli::run(argc, argv, std::cout, std::cerr);
}
