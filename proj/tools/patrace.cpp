#include "patrace/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return patrace::cli::run(argc, argv, std::cout, std::cerr);
}
