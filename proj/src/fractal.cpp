#include "ptheta/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ptheta {

FractalString epsilons(const ParabolicGerm& f, const Orbit& orbit) {
  if (orbit.points.size() < 2) throw FractalError("epsilons: orbit needs at least two points");
  FractalString S;
  S.k = f.k();
  S.a = f.a();
  S.points = orbit.points;
  S.real = true;
  for (cd x : orbit.points)
    if (x.imag() != 0.0) S.real = false;
  for (std::size_t n = 1; n < orbit.points.size(); ++n) {
    cd e = 0.5 * f.g(orbit.points[n - 1]);
    if (S.real) e = e.real();
    S.eps.push_back(e);
  }
  return S;
}

Count counting_function(const FractalString& S, double eps) {
  if (!S.real) throw FractalError("counting_function: string is not real");
  if (!(eps > 0.0)) throw FractalError("counting_function: eps must be positive");
  // Largest n with eps_n >= eps; the string is decreasing for real orbits.
  auto it = std::partition_point(S.eps.begin(), S.eps.end(), [&](cd e) { return e.real() >= eps; });
  std::size_t n = static_cast<std::size_t>(it - S.eps.begin());
  return {n, n == S.eps.size()};
}

double tube_function(const FractalString& S, double eps) {
  Count c = counting_function(S, eps);
  if (c.truncated) throw FractalError("tube_function: eps below the resolved range of the orbit");
  return 2.0 * eps * static_cast<double>(c.n) + S.points[c.n].real();
}

cd tau_kernel(cd eps, int k, cd a) {
  if (eps == cd(0.0)) throw FractalError("tau_kernel: eps must be nonzero");
  double kk = k;
  return 1.0 / (2.0 * kk) * std::pow(-2.0 / a, 1.0 / (kk + 1.0)) * std::pow(eps, -kk / (kk + 1.0));
}

Sum fractal_theta(const FractalString& S, cd s) {
  if (s.real() <= 0.0) throw FractalError("fractal_theta: Re s must be positive");
  double q = 1.0 / (1.0 - std::exp(-s.real()));
  cd sum = 0.0;
  for (std::size_t n = 1; n <= S.size(); ++n) {
    cd term = std::exp(-s * tau_kernel(S.epsilon(n), S.k, S.a));
    sum += term;
    double bound = std::abs(term) * q;
    if (n > 4 && bound < 1e-17 * std::abs(sum)) return {sum, bound};
  }
  throw FractalError("fractal_theta: orbit too short for the tail bound");
}

Sum geometric_zeta(const FractalString& S, cd s, double margin) {
  double D = static_cast<double>(S.k) / (S.k + 1.0);
  if (s.real() <= D + margin) throw FractalError("geometric_zeta: Re s at or below the abscissa of convergence");
  cd sum = 0.0;
  for (std::size_t n = 1; n <= S.size(); ++n) sum += std::pow(S.epsilon(n), s);
  // Tail from eps_n ~ eps_M (M/n)^{(k+1)/k}, summed by Euler-Maclaurin.
  double M = static_cast<double>(S.size());
  cd sig = s * (S.k + 1.0) / static_cast<double>(S.k);
  cd lead = std::pow(S.epsilon(S.size()), s) * std::pow(M, sig);
  cd tail = lead * (std::pow(M, 1.0 - sig) / (sig - 1.0) - 0.5 * std::pow(M, -sig) +
                    sig / 12.0 * std::pow(M, -sig - 1.0));
  double err = std::abs(tail) * (1.0 + std::log(M)) / M;
  return {sum + tail, err};
}

MinkowskiFit minkowski_fit(const FractalString& S) {
  if (!S.real) throw FractalError("minkowski_fit: string is not real");
  if (S.size() < 10000) throw FractalError("minkowski_fit: orbit shorter than 1e4");
  std::vector<double> X, Y;
  double e1 = S.eps.front().real();
  // Octave ladder from eps_1. The window keeps scales with 100 <= n(eps) <= M/10: larger eps
  // carry the O(1/n) transient, smaller ones sit near the end of the orbit.
  const std::size_t n_lo = 100, n_hi = S.size() / 10;
  for (int i = 0; i < 400; ++i) {
    double e = e1 * std::ldexp(1.0, -i);
    Count c = counting_function(S, e);
    if (c.truncated || c.n > n_hi) break;
    if (c.n < n_lo) continue;
    X.push_back(std::log(e));
    Y.push_back(std::log(tube_function(S, e)));
  }
  if (X.size() < 6) throw FractalError("minkowski_fit: not enough resolved scales");
  double n = static_cast<double>(X.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) sx += X[i], sy += Y[i], sxx += X[i] * X[i], sxy += X[i] * Y[i];
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icpt = (sy - slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) rss += std::pow(Y[i] - icpt - slope * X[i], 2);
  MinkowskiFit out{1.0 - slope, std::exp(icpt), std::sqrt(rss / n), std::exp(X.front()), std::exp(X.back()),
                   static_cast<int>(X.size())};
  if (out.residual > 0.05) throw FractalError("minkowski_fit: residual above threshold");
  return out;
}

cd conjugacy_point(const ParabolicGerm& f, cd x) {
  int k = f.k();
  cd ratio = -f.g(x) / (f.a() * std::pow(x, k + 1));
  return x * std::exp(std::log(ratio) / static_cast<double>(k + 1));
}

cd g_inverse(const ParabolicGerm& f, cd y, cd center) {
  int k = f.k();
  // Leading term g = -a x^{k+1}; take the root closest to the petal direction.
  cd r = std::pow(-y / f.a(), 1.0 / (k + 1.0));
  cd x = r, best = r;
  double bd = 1e300;
  for (int j = 0; j <= k; ++j) {
    cd cand = r * std::polar(1.0, 2.0 * std::numbers::pi * j / (k + 1.0));
    double d = std::abs(std::arg(cand / center));
    if (d < bd) bd = d, best = cand;
  }
  x = best;
  for (int it = 0; it < 100; ++it) {
    cd gp = 1.0 - f.deriv(x);
    cd dx = (f.g(x) - y) / gp;
    x -= dx;
    if (std::abs(dx) <= 4e-16 * std::abs(x)) return x;
  }
  throw FractalError("g_inverse: Newton did not converge");
}

cd critical_time(const FatouEvaluator& E, cd eps) {
  cd x = g_inverse(E.germ(), 2.0 * eps, E.x0());
  return E(x) + 1.0;
}

}  // namespace ptheta
