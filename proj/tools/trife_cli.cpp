#include <iostream>

#include "trife/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return trife::run_cli(args, std::cout, std::cerr);
}
