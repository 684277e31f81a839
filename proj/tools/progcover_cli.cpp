#include "progcover/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    const auto parsed = progcover::cli::parse_command_line(args, std::cout, std::cerr);
    if (!parsed.config) return parsed.exit_status;
    return progcover::cli::run(*parsed.config, std::cout, std::cerr);
}
