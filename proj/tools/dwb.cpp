#include <iostream>
#include <string>
#include <vector>

#include "dwb/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dwb::run_cli(args, std::cout, std::cerr);
}
