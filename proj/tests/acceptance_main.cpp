// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any fails. The fixture directory comes from argv[1] or CMTOR_FIXTURES.
#include <cstdlib>
#include <iostream>

#include "cmtor/selftest.hpp"

int main(int argc, char** argv) {
  std::string fixtures = "fixtures";
  if (const char* env = std::getenv("CMTOR_FIXTURES")) fixtures = env;
  if (argc > 1) fixtures = argv[1];

  cmtor::SelftestReport report = cmtor::run_selftest(fixtures);
  for (const auto& c : report.criteria) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  criterion " << c.number << "  " << c.title
              << "  [" << c.elapsedMs << " ms]  " << c.detail << "\n";
  }
  std::cout << (report.allPassed ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
  return report.allPassed ? 0 : 1;
}
