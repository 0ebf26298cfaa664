#include <string>
#include <vector>

#include "aeria/cli.hpp"

int main(int argc, char** argv) {
  return aeria::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
