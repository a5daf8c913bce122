#include <iostream>

#include "esd/cli.hpp"

int main(int argc, char** argv) {
    return esd::cli::app_main(argc, argv, std::cout, std::cerr);
}
