#include <iostream>

#include "qmoyal/cli.h"

int main(int argc, char** argv) { return qmoyal::run_cli(argc, argv, std::cout, std::cerr); }
