#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptheta/fractal.hpp"
#include "ptheta/theta.hpp"

using namespace ptheta;

TEST_CASE("epsilons are half steps of the orbit") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  Orbit o = iterate_orbit(f, 0.1, 50);
  FractalString S = epsilons(f, o);
  REQUIRE(S.size() == 50);
  CHECK(S.real);
  for (std::size_t n = 1; n <= 50; n += 7)
    CHECK(std::abs(S.epsilon(n) - (o.points[n - 1] - o.points[n]) / 2.0) < 1e-16);
}

TEST_CASE("counting function is the number of epsilons above the threshold") {
  ParabolicGerm f = model_of(1, -1.0, 40);
  Orbit o = iterate_orbit(f, 0.5, 200);
  FractalString S = epsilons(f, o);
  for (double e : {1e-2, 1e-3, 3e-4}) {
    Count c = counting_function(S, e);
    std::size_t brute = 0;
    for (std::size_t n = 1; n <= S.size(); ++n) brute += S.epsilon(n).real() > e;
    CHECK(c.n == brute);
  }
  CHECK(counting_function(S, 1e-9).truncated);
}

TEST_CASE("model k=1 tube function: V ~ 2 sqrt(2 eps)") {
  // eps_n = 1/(2 (n+1)(n+2)) for x_n = 1/(n+2)
  ParabolicGerm f = model_of(1, -1.0, 40);
  Orbit o = iterate_orbit(f, 0.5, 20000);
  FractalString S = epsilons(f, o);
  double e = 1e-6;
  double V = tube_function(S, e);
  CHECK(std::abs(V / (2.0 * std::sqrt(2.0 * e)) - 1.0) < 0.01);
}

TEST_CASE("Minkowski fit on the model k=1 orbit") {
  ParabolicGerm f = model_of(1, -1.0, 40);
  Orbit o = iterate_orbit(f, 0.5, 100000);
  MinkowskiFit m = minkowski_fit(epsilons(f, o));
  CHECK(std::abs(m.D - 0.5) < 0.02);
  CHECK(std::abs(m.M / (2.0 * std::sqrt(2.0)) - 1.0) < 0.05);
}

TEST_CASE("geometric zeta of the model k=1 string") {
  // sum 1/(2(n+1)(n+2))^s at s = 2
  ParabolicGerm f = model_of(1, -1.0, 40);
  Orbit o = iterate_orbit(f, 0.5, 4000);
  Sum z = geometric_zeta(epsilons(f, o), 2.0);
  double exact = 0.0;
  for (int n = 1; n < 2000000; ++n) exact += 1.0 / std::pow(2.0 * (n + 1.0) * (n + 2.0), 2);
  CHECK(std::abs(z.value - exact) < 1e-10);
}

TEST_CASE("g_inverse and critical time") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  cd x(0.04, 0.0);
  CHECK(std::abs(g_inverse(f, f.g(x), 1.0) - x) < 1e-14);
  Orbit o = iterate_orbit(f, 0.1, 30);
  FractalString S = epsilons(f, o);
  FatouEvaluator E(f, 0.1);
  for (std::size_t n : {1u, 10u, 30u}) CHECK(std::abs(critical_time(E, S.epsilon(n)) - double(n)) < 1e-7);
}

TEST_CASE("fractal theta equals theta of the conjugated germ") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  Orbit o = iterate_orbit(f, 0.1, 3000);
  FractalString S = epsilons(f, o);
  ParabolicGerm g = conjugate(f, conjugacy_phi(f));
  ThetaEvaluator T(g, conjugacy_point(f, 0.1));
  cd s(1.0, 0.5);
  Sum v = fractal_theta(S, s);
  CHECK(std::abs(v.value - T.direct(s).value) < 1e-9 * std::abs(v.value));
}
