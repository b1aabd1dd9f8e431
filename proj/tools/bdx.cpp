#include <iostream>

#include "bdindex/cli.hpp"

int main(int argc, char** argv) {
    return bdindex::run_cli(argc, argv, std::cout, std::cerr);
}
