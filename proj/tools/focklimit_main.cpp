#include "focklimit/cli.hpp"

int main(int argc, char** argv) {
  return focklimit::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
