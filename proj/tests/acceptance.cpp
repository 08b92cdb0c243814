// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.
#include <cstdlib>
#include <iostream>
#include <string>

#include "tripois/verify.hpp"

int main(int argc, char** argv) {
  tripois::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--extended") opts.extended = true;
  }
  return tripois::run_verify(opts, std::cout).all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
