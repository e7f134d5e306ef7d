#include <iostream>
#include <string>
#include <vector>

#include "argsector/cli_io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return argsector::run_command(args, std::cout, std::cerr);
}
