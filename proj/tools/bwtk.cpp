#include <iostream>

#include "bwtk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bwtk::cli::run(args, std::cout, std::cerr);
}
