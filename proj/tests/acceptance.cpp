// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Criterion 9 is a report-only probe and
// never fails the run.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "sinegas/verify.hpp"

using namespace sinegas;

namespace {

const std::map<std::string, CheckResult>& all_checks() {
  static const std::map<std::string, CheckResult> checks = [] {
    std::map<std::string, CheckResult> m;
    for (const CheckResult& c : run_suite("all", Config{})) m[c.name] = c;
    return m;
  }();
  return checks;
}

void expect(const std::string& name) {
  const CheckResult& c = all_checks().at(name);
  std::printf("[%s] %s: %s\n", c.pass ? "PASS" : (c.advisory ? "WARN" : "FAIL"),
              c.name.c_str(), c.detail.c_str());
  if (c.advisory) {
    WARN_MESSAGE(c.pass, c.name << ": " << c.detail);
  } else {
    CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
  }
}

}  // namespace

TEST_CASE("criterion 1: gap regime decay") { expect("criterion-01-gap-regime"); }
TEST_CASE("criterion 2: fixed-v regime decay") { expect("criterion-02-fixed-v"); }
TEST_CASE("criterion 3: extended regime ratio") { expect("criterion-03-extended-regime"); }
TEST_CASE("criterion 4: Toeplitz limit rate") { expect("criterion-04-toeplitz-limit"); }
TEST_CASE("criterion 5: FH asymptotics") { expect("criterion-05-fh-asymptotics"); }
TEST_CASE("criterion 6: transition regime") { expect("criterion-06-transition-regime"); }
TEST_CASE("criterion 7: derivative oscillation") { expect("criterion-07-derivative-oscillation"); }
TEST_CASE("criterion 8: M small-kappa law") { expect("criterion-08-m-small-kappa"); }
TEST_CASE("criterion 9: a0 conjecture probe") { expect("criterion-09-a0-conjecture-probe"); }
TEST_CASE("criterion 10: averaged-tail scaling") { expect("criterion-10-prop13-scaling"); }
TEST_CASE("criterion 11: special-function identities") { expect("criterion-11-identity-suite"); }
TEST_CASE("criterion 12: elliptic-map series") { expect("criterion-12-series-suite"); }
