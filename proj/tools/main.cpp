#include "wcheb/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return wcheb::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
