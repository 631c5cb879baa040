#include <iostream>
#include <string>
#include <vector>

#include "trek/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return trek::cli::run(std::move(args), std::cout, std::cerr);
}
