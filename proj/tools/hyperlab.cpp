#include <iostream>
#include <string>
#include <vector>

#include "hyperlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return hyperlab::cli::run(args, std::cout, std::cerr);
}
