// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "loraseq/cli.hpp"

int main(int argc, char** argv) { return loraseq::cli::main_entry(argc, argv, std::cout, std::cerr); }
