// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "coopvanet/cli.hpp"

int main(int argc, char** argv) {
    return coopvanet::run_cli(argc, argv, std::cout, std::cerr);
}
