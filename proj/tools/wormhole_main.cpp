#include <iostream>
#include <string>
#include <vector>

#include "wormhole/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return wormhole::cli::run(args, std::cout, std::cerr);
}
