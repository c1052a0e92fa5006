#include "polycurv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return polycurv::cli::dispatch(std::move(args));
}
