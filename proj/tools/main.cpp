#include <iostream>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return folkreg::cli::dispatch(args, std::cout, std::cerr);
}
