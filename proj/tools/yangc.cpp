#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "yangc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  yangc::CliEnvironment env;
  if (const char* path = std::getenv("YANG_PATH")) env.yang_path = path;
  return yangc::run(args, std::cout, std::cerr, env);
}
