#ifndef CMTOR_SELFTEST_HPP
#define CMTOR_SELFTEST_HPP

#include <string>
#include <vector>

namespace cmtor {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // values seen, or the failure reason
  long long elapsedMs = 0;
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;
  bool allPassed = false;
};

// Runs the full acceptance suite against the checked-in fixture configs.
// Failures (including missing fixture files) are reported per criterion and
// never throw.
SelftestReport run_selftest(const std::string& fixturesDir);

}  // namespace cmtor

#endif
