#include "runner.hpp"

#include <iostream>

int main(int argc, char** argv) { return padicv::main_entry(argc, argv, std::cout, std::cerr); }
