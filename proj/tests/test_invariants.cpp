#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptheta/invariants.hpp"

using namespace ptheta;

namespace {
constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);
}  // namespace

TEST_CASE("transition indexing") {
  CHECK(transition_side(1) == 1);
  CHECK(transition_side(2) == -1);
  CHECK(transition_petal(1) == 0);
  CHECK(transition_petal(4) == 1);
}

TEST_CASE("model germ has a trivial horn map") {
  ParabolicGerm f = model_of(1, -1.0, 60);
  FatouEvaluator E(f, 0.5);
  EVModulus M = fourier_coefficients(E, 1);
  REQUIRE(M.entries.size() == 1);
  CHECK(std::abs(M.entries[0].A) < 1e-8);
}

TEST_CASE("horn map commutes with translation by one") {
  ParabolicGerm f = prenormalize(from_coefficients({1.0, -1.0, 0.2}, 60)).germ;
  FatouEvaluator E(f, 0.1);
  cd t(30.0, 2.0);
  CHECK(std::abs(horn_map(E, 1, t + 1.0) - horn_map(E, 1, t) - 1.0) < 1e-9);
}

TEST_CASE("Fourier coefficients are stable in the sampling height") {
  ParabolicGerm f = prenormalize(from_coefficients({1.0, -1.0, 0.2}, 60)).germ;
  FatouEvaluator E(f, 0.1);
  FourierParams a, b;
  b.H = 2.5;
  for (int j : {1, 2}) {
    cd A1 = fourier_coefficients(E, j, a).entries.at(0).A;
    cd A2 = fourier_coefficients(E, j, b).entries.at(0).A;
    CHECK(std::abs(A1 - A2) < 1e-6 * std::abs(A1));
    CHECK(std::abs(A1) > 1e-3);
  }
}

TEST_CASE("equivalence of rescaled moduli") {
  EVModulus M1;
  M1.method = "horn";
  M1.entries = {{1, 1, cd(0.05, 0.03)}, {2, -1, cd(-0.05, 0.03)}, {1, 2, cd(0.001, -0.002)}};
  cd C(0.3, -0.1);
  EVModulus M2 = rescale(M1, C);
  for (const EVEntry& e : M2.entries) {
    const EVEntry* o = M1.find(e.j, e.m);
    REQUIRE(o);
    CHECK(std::abs(e.A - o->A * std::exp(2.0 * kPi * I * static_cast<double>(e.m) * C)) < 1e-15);
  }
  EquivalenceResult r = cocycles_equivalent(M1, M2, 1e-9);
  CHECK(r.verdict == Equivalence::equivalent);
  REQUIRE(r.C);
  // C is determined modulo 1
  cd d = *r.C - C;
  CHECK(std::abs(d - std::round(d.real())) < 1e-9);

  EVModulus M3 = M2;
  M3.entries[2].A *= 1.5;
  CHECK(cocycles_equivalent(M1, M3, 1e-9).verdict == Equivalence::inequivalent);

  EVModulus Z1, Z2;
  Z1.entries = {{1, 1, 0.0}};
  Z2.entries = {{1, 1, 0.0}};
  CHECK(cocycles_equivalent(Z1, Z2, 1e-9).verdict != Equivalence::inequivalent);
}

TEST_CASE("theta route agrees with the horn map") {
  ParabolicGerm f = prenormalize(from_coefficients({1.0, -1.0, 0.2}, 60)).germ;
  ThetaEvaluator T(f, 0.1);
  FatouEvaluator E(f, 0.1);
  cd Cp = E.prenormal_constant();
  cd horn = fourier_coefficients(E, 1).entries.at(0).A;
  ThetaInvariant ti = invariant_from_theta(T, 1);
  cd expected = horn * std::exp(2.0 * kPi * I * Cp);
  CHECK(std::abs(ti.A - expected) < 1e-4 * std::abs(expected));
}
