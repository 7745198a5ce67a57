#pragma once

#include <complex>
#include <vector>

#include "ptheta/fatou.hpp"
#include "ptheta/germ.hpp"

namespace ptheta {

struct FractalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FractalString {
  std::vector<cd> eps;     // eps[n-1] = epsilon_n, n = 1..M
  std::vector<cd> points;  // x_0..x_M
  int k = 1;
  cd a;
  bool real = false;

  std::size_t size() const { return eps.size(); }
  cd epsilon(std::size_t n) const { return eps.at(n - 1); }
};

// epsilon_n = (x_{n-1} - x_n)/2, computed as g(x_{n-1})/2.
FractalString epsilons(const ParabolicGerm& f, const Orbit& orbit);

struct Count {
  std::size_t n;
  bool truncated;  // eps at or below the smallest available epsilon
};
Count counting_function(const FractalString& S, double eps);

// V(eps) = 2 eps n(eps) + x_{n(eps)}.
double tube_function(const FractalString& S, double eps);

cd tau_kernel(cd eps, int k, cd a);

struct Sum {
  cd value;
  double error;
};

Sum fractal_theta(const FractalString& S, cd s);
Sum geometric_zeta(const FractalString& S, cd s, double margin = 0.05);

struct MinkowskiFit {
  double D;
  double M;
  double residual;  // rms of the log-log fit
  double eps_hi, eps_lo;
  int points;
};
MinkowskiFit minkowski_fit(const FractalString& S);

// phi(x) with phi^{k+1} = (f(x) - x)/a, the branch tangent to the identity.
cd conjugacy_point(const ParabolicGerm& f, cd x);

// x with g(x) = y in the petal around `center`.
cd g_inverse(const ParabolicGerm& f, cd y, cd center);

// T(eps) with T(eps_n) = n for the orbit used to normalize E.
cd critical_time(const FatouEvaluator& E, cd eps);

}  // namespace ptheta
