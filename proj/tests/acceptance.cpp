// Runs acceptance criteria 1-10 and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <iostream>

#include "hypdom/selftest.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : hypdom::default_fixture_dir();
  const auto results = hypdom::run_acceptance(dir, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
