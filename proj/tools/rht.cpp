#include "rht/json_io.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto res = rht::run_command(args);
    std::cout << res.out.dump(2) << "\n";
    return res.code;
}
