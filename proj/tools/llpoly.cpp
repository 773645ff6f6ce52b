#include <iostream>
#include <string>
#include <vector>

#include "llpoly/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return llpoly::cli::run(args, std::cout, std::cerr);
}
