#include <iostream>

#include "cli_args.hpp"

int main(int argc, char** argv) {
  auto parsed = bergman::parse_command_line(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return bergman::run(std::get<bergman::RunConfig>(parsed), std::cout, std::cerr);
}
