#include <iostream>

#include "mbt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mbt::cli_run(args, std::cout, std::cerr);
}
