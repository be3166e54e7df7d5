#include <iostream>
#include <string>
#include <vector>

#include "recam/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return recam::cli::run(args, std::cout, std::cerr);
}
