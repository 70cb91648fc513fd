#include <iostream>

#include "ivvi/cli.hpp"

int main(int argc, char** argv) {
    return ivvi::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
