#include <cmath>

#include "doctest.h"
#include "ptheta/series.hpp"

using namespace ptheta;

namespace {

double max_diff(const TruncSeries& a, const TruncSeries& b, int upto) {
  double d = 0.0;
  for (int e = std::min(a.low(), b.low()); e < upto; ++e) d = std::max(d, std::abs(a[e] - b[e]));
  return d;
}


}  // namespace

TEST_CASE("order bookkeeping") {
  TruncSeries a(1, {1.0, 2.0, 3.0});  // x + 2x^2 + 3x^3 + O(x^4)
  CHECK(a.order() == 4);
  CHECK(a[2] == cd(2.0));
  CHECK(a[0] == cd(0.0));
  CHECK_THROWS_AS((void)a[4], SeriesError);
  TruncSeries b(1, {1.0, 5.0});
  CHECK((a + b).order() == 3);
  CHECK(mul(a, a).order() == 5);  // x^2 (1 + ...) known to x^4
}

TEST_CASE("geometric series reciprocal") {
  const int N = 20;
  TruncSeries u = TruncSeries::constant(1.0, N) - TruncSeries::monomial(1.0, 1, N);
  TruncSeries r = reciprocal(u);
  for (int e = 0; e < N; ++e) CHECK(std::abs(r[e] - 1.0) < 1e-14);
}

TEST_CASE("exp and log are inverse") {
  const int N = 16;
  std::vector<cd> c(N);
  for (int i = 0; i < N; ++i) c[i] = cd(0.3 / (i + 1), -0.1 * i);
  c[0] = 0.0;
  TruncSeries f(0, c);
  CHECK(max_diff(series_log(series_exp(f)), f, N) < 1e-13);
}

TEST_CASE("log(1+x) coefficients") {
  const int N = 12;
  TruncSeries u = TruncSeries::constant(1.0, N) + TruncSeries::monomial(1.0, 1, N);
  TruncSeries l = series_log(u);
  for (int n = 1; n < N; ++n) CHECK(std::abs(l[n] - std::pow(-1.0, n - 1) / n) < 1e-14);
}

TEST_CASE("reversion of x + x^2 gives signed Catalan numbers") {
  const int N = 15;
  TruncSeries f = TruncSeries::monomial(1.0, 1, N) + TruncSeries::monomial(1.0, 2, N);
  TruncSeries g = reversion(f);
  double cat = 1.0;
  for (int n = 1; n < N; ++n) {
    CHECK(std::abs(g[n] - std::pow(-1.0, n - 1) * cat) < 1e-9 * cat);
    cat = cat * 2.0 * (2 * n - 1) / (n + 1);
  }
}

TEST_CASE("property: composition with the reversion is the identity") {
  const int N = 14;
  std::vector<cd> c(N - 1);
  for (int i = 0; i < N - 1; ++i) c[i] = i == 0 ? cd(1.0) : cd(std::sin(1.3 * i), std::cos(0.7 * i)) * 0.5;
  TruncSeries f(1, c);
  TruncSeries x = TruncSeries::monomial(1.0, 1, N);
  CHECK(max_diff(compose(f, reversion(f)), x, N) < 1e-10);
  CHECK(max_diff(compose(reversion(f), f), x, N) < 1e-10);
}

TEST_CASE("nth_root and unit_power agree with repeated multiplication") {
  const int N = 10;
  TruncSeries u = TruncSeries::constant(1.0, N) + TruncSeries::monomial(cd(0.4, 0.2), 1, N) +
                  TruncSeries::monomial(-0.3, 3, N);
  TruncSeries r = nth_root(u, 3);
  CHECK(max_diff(power(r, 3), u, N) < 1e-13);
  CHECK(max_diff(unit_power(u, 1.0 / 3.0), r, N) < 1e-13);
}

TEST_CASE("derivative, antiderivative and residue") {
  TruncSeries f(-2, {1.0, 3.0, 2.0, 5.0});  // x^-2 + 3/x + 2 + 5x
  CHECK(residue(f) == cd(3.0));
  TruncSeries d = derivative(f);
  CHECK(d[-3] == cd(-2.0));
  CHECK(d[-2] == cd(-3.0));
  CHECK(d[0] == cd(5.0));
  TruncSeries p(0, {1.0, 2.0, 3.0});
  TruncSeries P = antiderivative(p);
  CHECK(std::abs(P[3] - 1.0) < 1e-15);
  CHECK_THROWS_AS(antiderivative(f), SeriesError);
}

TEST_CASE("evaluation") {
  TruncSeries p(1, {1.0, -1.0, 0.2});
  cd x(0.1, 0.05);
  CHECK(std::abs(p.eval(x) - (x - x * x + 0.2 * x * x * x)) < 1e-16);
}
