#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptheta/theta.hpp"

using namespace ptheta;

namespace {
constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);

double rel(cd a, cd b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("model germ: direct sum and strips match the geometric series") {
  ParabolicGerm f = model_of(1, -1.0, 60);
  ThetaEvaluator T(f, 0.5);  // t0 = 2
  auto exact = [](cd s) { return std::exp(-2.0 * s) / (1.0 - std::exp(-s)); };
  for (cd s : {cd(0.5, 0.3), cd(1.2, -2.0)}) CHECK(rel(T.direct(s).value, exact(s)) < 1e-10);
  for (cd s : {cd(-1.0, 1.0), cd(-0.3, -2.5), cd(0.4, 4.0)}) CHECK(rel(T.main(s).value, exact(s)) < 1e-9);
  CHECK(rel(T.strip(cd(-1.0, 2.0 * kPi + 1.0), 2).value, exact(cd(-1.0, 2.0 * kPi + 1.0))) < 1e-9);
}

TEST_CASE("strip index") {
  ThetaEvaluator T(model_of(1, -1.0, 40), 0.5);
  CHECK(T.strip_index(cd(-1.0, 1.0), kPi) == 1);
  CHECK(T.strip_index(cd(-1.0, -1.0), kPi) == 0);
  CHECK(T.strip_index(cd(-1.0, 2.0 * kPi + 0.5), kPi) == 2);
}

TEST_CASE("sheet point serialization round trip") {
  SheetPoint p{cd(-0.5, 1.25), {{2, +1}, {-1, -1}}};
  std::string s = to_string(p);
  SheetPoint q = parse_sheet_point(s);
  CHECK(q.s == p.s);
  REQUIRE(q.crossings.size() == 2);
  CHECK(q.crossings[0].m == 2);
  CHECK(q.crossings[0].dir == 1);
  CHECK(q.crossings[1].m == -1);
  CHECK(q.crossings[1].dir == -1);
  CHECK_THROWS_AS(parse_sheet_point("1,2;crossings=3x"), ThetaError);
}

TEST_CASE("generic germ: strips glue across a cut through the jump") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  ThetaEvaluator T(f, 0.1);
  const double tilt = T.params().tilt;
  for (cd s : {cd(-1.0, 0.05), cd(-1.5, -0.15)}) {
    cd above = T.strip(s, 1, kPi + tilt).value;
    cd below = T.strip(s, 0, kPi - tilt).value;
    cd jump = T.jump(0, s).value;
    CHECK(std::abs(above - below - jump) < 1e-7 * std::max(1.0, std::abs(jump)));
  }
}

TEST_CASE("direct sum and strip agree where both apply") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  ThetaEvaluator T(f, 0.1);
  cd s(0.4, 1.0);
  CHECK(rel(T.direct(s).value, T.strip(s, 1).value) < 1e-8);
}

TEST_CASE("Fatou coordinate recovered from the Hankel transform") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  ThetaEvaluator T(f, 0.1);
  const FatouEvaluator& E = T.fatou();
  std::vector<cd> off;
  for (cd x : {cd(0.05), cd(0.03, 0.01)}) {
    Recovery r = recover_fatou(T, x);
    off.push_back(r.value - E(x));
  }
  CHECK(std::abs(off[0] - off[1]) < 1e-7);
}

TEST_CASE("continuation across a cut adds the jump") {
  ParabolicGerm f = from_coefficients({1.0, -1.0, 0.2}, 60);
  ThetaEvaluator T(f, 0.1);
  cd s(-1.0, 0.3);
  SheetPoint p{s, {{0, -1}}};
  cd v = T.continued(p).value;
  CHECK(std::abs(v - (T.main(s).value + T.jump(0, s).value)) < 1e-9 * std::max(1.0, std::abs(v)));
  (void)I;
}
