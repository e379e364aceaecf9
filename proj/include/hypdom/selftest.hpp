#pragma once

// The acceptance criteria as runnable checks, shared by `hypdom selftest`
// and the acceptance test binary.

#include <ostream>
#include <string>
#include <vector>

namespace hypdom {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Directory holding modular.json, lattice.json and figure8.json.
std::string default_fixture_dir();

/// Runs criteria 1-10 in order; each result is also printed to `log` as
/// soon as it is known, one line per criterion.
std::vector<CriterionResult> run_acceptance(const std::string& fixture_dir, std::ostream& log);

}  // namespace hypdom
