#include <iostream>
#include <vector>

#include "qmoore/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qmoore::run_cli(args, std::cout, std::cerr);
}
