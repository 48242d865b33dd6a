#include <string>
#include <vector>

#include "scalereq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return scalereq::run(args);
}
