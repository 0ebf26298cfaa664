#pragma once

#include <vector>
#include <string>

namespace aeria {

// Entry point behind the `aeria` binary, exposed so tests can drive the CLI
// in-process. args excludes the program name. Exit codes: 0 success, 1 usage
// error, 2 data error, 3 verification failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace aeria
