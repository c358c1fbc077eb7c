#include "gabornc/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return gabornc::cli::run(argc, argv, std::cout, std::cerr);
}
