#include <iostream>

#include "hnnlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto rep = hnnlab::cli::run(args);
    std::cout << rep.out;
    std::cerr << rep.err;
    return rep.exit_code;
}
