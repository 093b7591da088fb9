#pragma once

// The acceptance criteria as runnable checks, shared by the `verify` CLI
// subcommand and the acceptance test binary.  Each check prints nothing; the
// caller renders one pass/fail line per criterion from the returned records.

#include <string>
#include <vector>

#include "sinegas/config.hpp"

namespace sinegas {

struct CheckResult {
  std::string name;
  bool pass;
  bool advisory;       // report-only: does not affect the exit status
  std::string detail;  // measured values
};

// suite in {specfun, elliptic, mfun, oracle, asympt, all}
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const Config& cfg = Config{});

// Prints "[PASS|FAIL] name: detail" per check; returns the count of
// non-advisory failures.
int report_checks(const std::vector<CheckResult>& checks);

}  // namespace sinegas
