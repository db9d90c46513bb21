#include <iostream>
#include <string>
#include <vector>

#include "fusionwalk/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fusionwalk::io::run_cli(args, std::cout, std::cerr);
}
