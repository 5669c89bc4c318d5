#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ftap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    ftap::cli::Terminal terminal;
    terminal.color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO) != 0;
    return ftap::cli::run(args, std::cout, std::cerr, terminal);
}
