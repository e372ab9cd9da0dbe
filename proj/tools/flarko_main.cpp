#include <iostream>
#include <string>
#include <vector>

#include "flarko/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return flarko::cli::run_cli(std::move(args), std::cout, std::cerr);
}
