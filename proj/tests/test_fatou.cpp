#include <cmath>

#include "doctest.h"
#include "ptheta/contour.hpp"
#include "ptheta/fatou.hpp"
#include "ptheta/special.hpp"

using namespace ptheta;

TEST_CASE("model germ: Fatou coordinate is the model weight") {
  for (int k : {1, 2}) {
    ParabolicGerm f = model_of(k, -1.0, 60);
    cd x0 = 0.5;
    FatouEvaluator E(f, x0);
    CHECK(std::abs(E.formal().rho) < 1e-12);
    for (cd x : {cd(0.3), cd(0.2, 0.05), cd(0.05, -0.02)}) CHECK(std::abs(E(x) - (f.t(x) - f.t(x0))) < 1e-10);
  }
}

TEST_CASE("formal Fatou coordinate: rho equals the residual invariant") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  FormalFatou F = formal_fatou(f);
  CHECK(std::abs(F.rho - residual_invariant(f)) < 1e-12);
  REQUIRE(F.principal.size() == 1);
  // principal part t = -1/(a x) = 1/x
  CHECK(std::abs(F.principal[0] - 1.0) < 1e-14);
}

TEST_CASE("property: Abel equation on petal points") {
  for (auto coeffs : {std::vector<cd>{1.0, -1.0, 0.2}, std::vector<cd>{1.0, 0.0, -1.0, 0.2, 0.5},
                      std::vector<cd>{1.0, cd(-1.0, 0.5), 0.3}}) {
    ParabolicGerm f = from_coefficients(coeffs, 60);
    cd x0 = 0.1 * f.attracting_center(0);
    FatouEvaluator E(f, x0);
    CHECK(std::abs(E(x0)) < 1e-13);
    for (double r : {0.02, 0.06, 0.1})
      for (double th : {-0.4, 0.0, 0.4}) {
        cd x = r * f.attracting_center(0) * std::polar(1.0, th);
        CHECK(std::abs(E(f(x)) - E(x) - 1.0) < 1e-9);
        CHECK(std::abs(E.inverse(E(x)) - x) < 1e-12);
      }
  }
}

TEST_CASE("repelling coordinate satisfies the Abel equation") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  FatouEvaluator E(f, 0.1);
  cd x(-0.05, 0.01);
  CHECK(std::abs(E.psi_rep_raw(f(x)) - E.psi_rep_raw(x) - 1.0) < 1e-9);
  CHECK(std::abs(E.inverse_rep_raw(E.psi_rep_raw(x)) - x) < 1e-12);
}

TEST_CASE("derivative against a centred difference") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  FatouEvaluator E(f, 0.1);
  cd x(0.07, 0.01);
  double h = 1e-5;
  cd fd = (E(x + h) - E(x - h)) / (2 * h);
  CHECK(std::abs(E.derivative(x) - fd) < 1e-5 * std::abs(fd));
}

TEST_CASE("Borel monomial: Laplace transform recovers the monomial") {
  // k = 1, a = -1: x = 1/t, so x^nu = t^{-nu}; the Laplace kernel is e^{s t} along the ray s = -r.
  const double t = 2.0;
  for (double nu : {3.0, 2.5, 1.5}) {
    Integrand F = [&](cd r) {
      cd s = -r;
      return -std::exp(s * t) * borel_monomial(nu, s, 3.141592653589793, BorelKind::minor, 1, -1.0).value;
    };
    cd acc = 0.0;
    // graded panels near 0 handle the s^{nu-1} endpoint behaviour
    double z0 = 0.0;
    for (double z1 = 1e-6; z1 < 40.0; z1 = std::min(40.0, z1 < 1.0 ? 4.0 * z1 : z1 + 1.0)) {
      acc += segment_integral(F, z0, z1, 24);
      z0 = z1;
      if (z1 == 40.0) break;
    }
    CHECK(std::abs(acc - std::pow(t, -nu)) < 1e-9);
  }
  BorelValue d = borel_monomial(-1.0, 0.5, 3.141592653589793, BorelKind::minor, 1, -1.0);
  CHECK(d.dirac);
  CHECK(d.dirac_order == 1);
}
