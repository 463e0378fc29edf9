#include <iostream>

#include "graphdiscord/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gd::cli::run(args, std::cout, std::cerr);
}
