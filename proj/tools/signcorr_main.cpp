#include <iostream>

#include "signcorr/cli.hpp"

int main(int argc, char** argv)
{
    return signcorr::cli::run_cli(argc, argv, std::cout, std::cerr);
}
