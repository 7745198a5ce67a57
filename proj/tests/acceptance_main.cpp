// Runs the acceptance criteria and prints one line per criterion.
#include <cstdlib>
#include <iostream>

#include "ptheta/suite.hpp"

int main(int argc, char** argv) {
  using namespace ptheta;
  int failed = 0;
  auto crit = acceptance_criteria();
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (argc > 1 && std::atoi(argv[1]) != static_cast<int>(i) + 1) continue;
    CheckResult r = crit[i]();
    std::cout << format(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " failing criteria" << std::endl;
  return failed ? 1 : 0;
}
