#include <iostream>

#include <secluded/cli.hpp>

int main(int argc, char** argv) {
    return secluded::cli::execute(argc, argv, std::cout, std::cerr);
}
