#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return twistorkit::run(argc, argv, std::cout, std::cerr); }
