#include <iostream>
#include <string>
#include <vector>

#include "qstab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qstab::run_command(args, std::cout, std::cerr);
}
