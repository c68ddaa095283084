#include <iostream>

#include "qpd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qpd::cli::run(args, std::cout, std::cerr);
}
