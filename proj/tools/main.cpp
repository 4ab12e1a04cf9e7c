#include <iostream>
#include <string>
#include <vector>

#include "anneal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return anneal::run_cli(args, std::cout, std::cerr);
}
