#include <string>
#include <vector>

#include "rcs/cli.hpp"

int main(int argc, char** argv) {
  return rcs::cli::run(std::vector<std::string>(argv, argv + argc));
}
