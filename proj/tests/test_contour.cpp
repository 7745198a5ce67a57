#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptheta/contour.hpp"
#include "ptheta/special.hpp"

using namespace ptheta;

namespace {
constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);
}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {4, 16, 24}) {
    const GaussRule& g = gauss_legendre(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], 2 * n - 2);
    CHECK(std::abs(s - 2.0 / (2 * n - 1)) < 1e-14);
  }
}

TEST_CASE("Hankel representation of 1/Gamma") {
  for (cd z : {cd(0.5), cd(2.5), cd(-1.5), cd(1.0, 1.0), cd(0.3, 0.7)}) {
    Integrand F = [&](cd s) { return std::exp(s - z * std::log(s)); };
    for (double R : {0.3, 1.0}) {
      ContourSpec c;
      c.radius = R;
      QuadResult q = hankel_integral(F, c);
      CHECK(std::abs(q.value / (2.0 * kPi * I) - rgamma(z)) < 1e-9);
    }
  }
}

TEST_CASE("Gamma reflection and recurrence") {
  for (cd z : {cd(0.3, 0.2), cd(2.7, -1.0), cd(-0.4, 0.5)}) {
    CHECK(std::abs(gamma(z + 1.0) - z * gamma(z)) < 1e-12 * std::abs(gamma(z + 1.0)));
    cd lhs = gamma(z) * gamma(1.0 - z);
    CHECK(std::abs(lhs - kPi / std::sin(kPi * z)) < 1e-11 * std::abs(lhs));
  }
  CHECK(std::abs(rgamma(-3.0)) < 1e-15);
  CHECK(std::abs(gamma(cd(5.0)) - 24.0) < 1e-12);
}

TEST_CASE("ray and circle integrals") {
  ContourSpec c;
  c.kind = ContourKind::ray;
  c.direction = 0.0;
  QuadResult q = ray_integral([](cd s) { return std::exp(-2.0 * s); }, c);
  CHECK(std::abs(q.value - 0.5) < 1e-10);
  cd r = circle_integral([](cd s) { return std::exp(s) / (s - 0.2); }, 0.0, 0.5, 64);
  CHECK(std::abs(r - std::exp(0.2)) < 1e-12);
}

TEST_CASE("exponential integral E1") {
  // E1(1) = 0.21938393439552...
  CHECK(std::abs(expint_e1(1.0) - 0.2193839343955203) < 1e-13);
  // E1(x) ~ e^{-x}/x (1 - 1/x + 2/x^2 - ...)
  double x = 60.0;
  cd asym = std::exp(-x) / x * (1.0 - 1.0 / x + 2.0 / (x * x) - 6.0 / (x * x * x) + 24.0 / (x * x * x * x));
  CHECK(std::abs(expint_e1(x) - asym) < 1e-6 * std::abs(asym));
}
