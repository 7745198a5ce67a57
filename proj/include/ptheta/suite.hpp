#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ptheta/germ.hpp"

namespace ptheta {

struct CorpusGerm {
  std::string name;
  ParabolicGerm germ;
  cd x0;
};

// Models k=1,2; x+x^2; x-x^2+0.2x^3; x-x^2+0.3x^3-0.1x^4; a perturbed k=2 germ.
const std::vector<CorpusGerm>& corpus();

struct CheckResult {
  int id = 0;
  char prefix = 'C';  // 'C' acceptance criterion, 'G' per-germ check
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

std::string format(const CheckResult& r);

// The twelve acceptance criteria, in order.
std::vector<std::function<CheckResult()>> acceptance_criteria();
CheckResult run_criterion(int id);

// Checks that apply to a single germ and orbit start.
std::vector<CheckResult> germ_checks(const ParabolicGerm& f, cd x0, double quad_tol);

// Points x_j inside the attracting petal of x0, spread in modulus and angle.
std::vector<cd> petal_points(const ParabolicGerm& f, cd x0, int n);

// Independent 1/Gamma for the quadrature self-test: Stirling series after upward recurrence.
cd rgamma_stirling(cd z);

}  // namespace ptheta
