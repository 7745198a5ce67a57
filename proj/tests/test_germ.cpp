#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptheta/germ.hpp"

using namespace ptheta;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("k and a are read from the first nonlinear coefficient") {
  ParabolicGerm f = from_coefficients({1.0, 0.0, cd(0.5, 0.5), 2.0}, 30);
  CHECK(f.k() == 2);
  CHECK(f.a() == cd(0.5, 0.5));
  CHECK_THROWS_AS(from_coefficients({1.0}, 30), GermError);
  CHECK_THROWS_AS(from_coefficients({1.1, 1.0}, 30), GermError);
  CHECK_THROWS_AS(model_of(1, 0.0, 30), GermError);
}

TEST_CASE("model map advances the model weight by exactly one") {
  for (int k : {1, 2, 3}) {
    ParabolicGerm f = model_of(k, cd(-1.0, 0.4), 40);
    cd c = f.attracting_center(0);
    cd x = 0.3 * c;
    CHECK(std::abs(f.t(f(x)) - f.t(x) - 1.0) < 1e-12);
  }
}

TEST_CASE("attracting petal centres") {
  ParabolicGerm f = model_of(2, -1.0, 30);
  // a = -1, k = 2: centres exp(i (pi - pi + 2 pi j)/2) = 1, -1
  CHECK(std::abs(f.attracting_center(0) - 1.0) < 1e-15);
  CHECK(std::abs(f.attracting_center(1) + 1.0) < 1e-15);
  CHECK(f.petal_of(0.1) == 0);
  CHECK(f.petal_of(-0.1) == 1);
  ParabolicGerm g = from_coefficients({1.0, 1.0}, 30);
  CHECK(std::abs(g.attracting_center(0) + 1.0) < 1e-15);
}

TEST_CASE("g and inverse") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 40);
  cd x(0.05, 0.02);
  CHECK(std::abs(f.g(x) - (x - f(x))) < 1e-17);
  CHECK(std::abs(f.inverse(f(x)) - x) < 1e-15);
  CHECK(std::abs(f(f.inverse(x)) - x) < 1e-15);
}

TEST_CASE("orbit of the model map follows t + n") {
  ParabolicGerm f = model_of(1, -1.0, 40);
  Orbit o = iterate_orbit(f, 0.5, 100);
  REQUIRE(o.points.size() == 101);
  for (std::size_t n = 0; n <= 100; n += 10) CHECK(std::abs(1.0 / o.points[n] - (2.0 + n)) < 1e-10);
  CHECK_THROWS_AS(iterate_orbit(f, -0.01, 10), GermError);
}

TEST_CASE("residual invariant of x + x^2 + b x^3 is 1 - b") {
  for (double b : {0.0, 0.3, -1.2}) {
    ParabolicGerm f = from_coefficients({1.0, 1.0, b}, 40);
    CHECK(std::abs(residual_invariant(f) - (1.0 - b)) < 1e-12);
  }
  CHECK(std::abs(residual_invariant(model_of(2, -1.0, 40))) < 1e-12);
}

TEST_CASE("property: residual invariant is unchanged by conjugation") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.3, -0.1}, 40);
  cd r0 = residual_invariant(f);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<cd> h(39, 0.0);
    h[0] = 1.0;
    h[1] = cd(0.3 * trial - 0.4, 0.1 * trial);
    h[2] = cd(0.2, -0.15 * trial);
    ParabolicGerm g = conjugate(f, TruncSeries(1, h));
    CHECK(std::abs(residual_invariant(g) - r0) < 1e-9);
  }
}

TEST_CASE("prenormalization keeps k, a and the residual invariant") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 40);
  Prenormalized p = prenormalize(f);
  CHECK(p.germ.k() == 1);
  CHECK(std::abs(p.germ.a() - f.a()) < 1e-14);
  CHECK(std::abs(residual_invariant(p.germ) - residual_invariant(f)) < 1e-10);
}

TEST_CASE("model estimate from an orbit") {
  ParabolicGerm f = from_coefficients({1.0, 0.0, -1.0}, 40);
  Orbit o = iterate_orbit(f, 0.2, 2000);
  ModelEstimate m = estimate_model_from_orbit(o.points);
  CHECK(std::abs(m.k_est - 2.0) < 0.05);
  CHECK(std::abs(m.a_est + 1.0) < 0.1);
  (void)kPi;
}
