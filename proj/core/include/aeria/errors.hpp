#pragma once

#include <stdexcept>
#include <string>

namespace aeria {

// Malformed or inconsistent input data: profiles, configs, traces, demand files.
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace aeria
