#include <iostream>

#include "grassfault/cli.hpp"

int main(int argc, char** argv) {
    return grassfault::cli::run(argc, argv, std::cout, std::cerr);
}
