#include "cli.h"

#include <cstdio>

namespace tplan {

int run_cli(const std::vector<std::string>& args) {
    (void)args;
    std::fprintf(stderr, "not implemented yet\n");
    return 2;
}

}  // namespace tplan
