#ifndef CLI_CLI_H
#define CLI_CLI_H

#include <string>
#include <vector>

namespace tplan {

// Exit codes: 0 solved/valid, 1 unsolved/invalid, 2 usage or parse
// error, 3 timeout.
int run_cli(const std::vector<std::string>& args);

}  // namespace tplan

#endif
