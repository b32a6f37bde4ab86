#include <string>
#include <vector>

#include "hyperslender/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return hyperslender::run_cli(args);
}
