#include "ptheta/germ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ptheta {

cd log1p_c(cd u) {
  if (std::abs(u) > 0.25) return std::log(1.0 + u);
  cd term = u, sum = 0.0;
  for (int n = 1; n < 80; ++n) {
    sum += term / static_cast<double>(n);
    term *= -u;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

cd expm1_c(cd z) {
  if (std::abs(z) > 0.25) return std::exp(z) - 1.0;
  cd term = z, sum = 0.0;
  for (int n = 2; n < 60; ++n) {
    sum += term;
    term *= z / static_cast<double>(n);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

ParabolicGerm::ParabolicGerm(const TruncSeries& f, bool exact_model) : series_(f), model_(exact_model) {
  if (f.is_zero() || f.low() != 1) throw GermError("germ must vanish at 0 with nonzero linear term");
  if (std::abs(f[1] - 1.0) > 1e-14) throw GermError("germ must satisfy f'(0) = 1");
  int kk = 0;
  for (int e = 2; e < f.order(); ++e) {
    if (std::abs(f[e]) > 1e-13) {
      kk = e - 1;
      break;
    }
  }
  if (kk == 0) throw GermError("identity germ: all nonlinear coefficients vanish");
  k_ = kk;
  a_ = f[k_ + 1];
  if (f.order() - 1 < 2 * k_ + 2) throw GermError("truncation order must be at least 2k+2");

  int deg = f.order() - 1;
  while (deg > 1 && f[deg] == cd(0.0)) --deg;
  p_.assign(static_cast<std::size_t>(deg + 1), cd(0.0));
  for (int e = 1; e <= deg; ++e) p_[static_cast<std::size_t>(e)] = f[e];
  dp_.assign(static_cast<std::size_t>(deg), cd(0.0));
  for (int e = 1; e <= deg; ++e) dp_[static_cast<std::size_t>(e - 1)] = static_cast<double>(e) * f[e];

  TruncSeries low_part = f.truncate(std::min(f.order(), 2 * k_ + 4));
  TruncSeries rv = reversion(low_part);
  rev_.assign(static_cast<std::size_t>(rv.order()), cd(0.0));
  for (int e = rv.low(); e < rv.order(); ++e) rev_[static_cast<std::size_t>(e)] = rv[e];

  if (model_) {
    r_eval_ = std::numeric_limits<double>::infinity();
  } else {
    double r = std::numeric_limits<double>::infinity();
    for (int e = 2; e <= deg; ++e) {
      double m = std::abs(f[e]);
      if (m > 0) r = std::min(r, std::pow(m, -1.0 / (e - 1)));
    }
    r_eval_ = 0.5 * r;
  }
}

namespace {
cd horner(const std::vector<cd>& p, cd x) {
  cd acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}
}  // namespace

cd ParabolicGerm::operator()(cd x) const {
  if (model_) {
    cd u = -a_ * static_cast<double>(k_) * std::pow(x, k_);
    return x * std::exp(-log1p_c(u) / static_cast<double>(k_));
  }
  return horner(p_, x);
}

cd ParabolicGerm::deriv(cd x) const {
  if (model_) {
    cd u = -a_ * static_cast<double>(k_) * std::pow(x, k_);
    return std::exp(-(1.0 / k_ + 1.0) * log1p_c(u));
  }
  return horner(dp_, x);
}

cd ParabolicGerm::g(cd x) const {
  if (model_) {
    cd u = -a_ * static_cast<double>(k_) * std::pow(x, k_);
    return -x * expm1_c(-log1p_c(u) / static_cast<double>(k_));
  }
  cd acc = 0.0;
  for (std::size_t i = p_.size(); i-- > 2;) acc = acc * x + p_[i];
  return -acc * x * x;
}

cd ParabolicGerm::inverse(cd y) const {
  if (model_) {
    cd u = a_ * static_cast<double>(k_) * std::pow(y, k_);
    return y * std::exp(-log1p_c(u) / static_cast<double>(k_));
  }
  cd x = horner(rev_, y);
  for (int it = 0; it < 60; ++it) {
    cd dx = (horner(p_, x) - y) / horner(dp_, x);
    x -= dx;
    if (std::abs(dx) <= 2e-16 * std::abs(x)) break;
  }
  if (!(std::abs(horner(p_, x) - y) <= 1e-12 * std::abs(y)))
    throw GermError("inverse branch did not converge");
  return x;
}

cd ParabolicGerm::t(cd x) const {
  return -1.0 / (a_ * static_cast<double>(k_) * std::pow(x, k_));
}

cd ParabolicGerm::attracting_center(int j) const {
  double th = (std::numbers::pi - std::arg(a_) + 2.0 * std::numbers::pi * j) / k_;
  return std::polar(1.0, th);
}

int ParabolicGerm::petal_of(cd x) const {
  int best = 0;
  double bd = 1e300;
  for (int j = 0; j < k_; ++j) {
    double d = std::abs(std::arg(x / attracting_center(j)));
    if (d < bd) bd = d, best = j;
  }
  return best;
}

ParabolicGerm model_of(int k, cd a, int N) {
  if (a == cd(0.0)) throw GermError("model_of: a must be nonzero");
  if (k < 1) throw GermError("model_of: k must be positive");
  if (N < 2 * k + 2) throw GermError("model_of: N must be at least 2k+2");
  TruncSeries inner = TruncSeries::constant(1.0, N) - TruncSeries::monomial(a * static_cast<double>(k), k, N);
  TruncSeries u = unit_power(inner, -1.0 / k);
  TruncSeries f = mul(TruncSeries::monomial(1.0, 1, N + 1), u).truncate(N + 1);
  return ParabolicGerm(f, true);
}

ParabolicGerm from_coefficients(const std::vector<cd>& coeffs, int N) {
  if (coeffs.empty()) throw GermError("from_coefficients: empty coefficient list");
  if (static_cast<int>(coeffs.size()) > N) throw GermError("from_coefficients: more coefficients than truncation");
  if (std::abs(coeffs[0] - 1.0) > 1e-14) throw GermError("from_coefficients: f'(0) must be 1");
  std::vector<cd> v(static_cast<std::size_t>(N), cd(0.0));
  std::copy(coeffs.begin(), coeffs.end(), v.begin());
  return ParabolicGerm(TruncSeries(1, v));
}

Orbit iterate_orbit(const ParabolicGerm& f, cd x0, int M) {
  if (M < 0) throw GermError("iterate_orbit: M must be nonnegative");
  if (std::abs(x0) > f.eval_radius()) throw GermError("iterate_orbit: x0 outside evaluation radius");
  if (x0 == cd(0.0)) throw GermError("iterate_orbit: x0 = 0 is the fixed point");
  cd t0 = f.t(x0);
  if (std::abs(std::arg(t0)) > 0.75 * std::numbers::pi)
    throw GermError("iterate_orbit: x0 not in an attracting petal");
  Orbit o;
  o.x0 = x0;
  o.petal = f.petal_of(x0);
  o.points.reserve(static_cast<std::size_t>(M) + 1);
  o.t_values.reserve(static_cast<std::size_t>(M) + 1);
  cd x = x0;
  int nondecr = 0;
  for (int n = 0; n <= M; ++n) {
    o.points.push_back(x);
    o.t_values.push_back(f.t(x));
    if (n == M) break;
    cd y = f(x);
    if (!(std::abs(y) <= f.eval_radius())) throw GermError("iterate_orbit: orbit escapes evaluation radius");
    nondecr = (std::abs(y) >= std::abs(x)) ? nondecr + 1 : 0;
    if (nondecr >= 10) throw GermError("iterate_orbit: orbit not attracted");
    x = y;
  }
  return o;
}

cd residual_invariant(const ParabolicGerm& f) {
  TruncSeries x = TruncSeries::monomial(1.0, 1, f.series().order());
  TruncSeries d = f.series() - x;
  return residue(reciprocal(d)) + (f.k() + 1) / 2.0;
}

ParabolicGerm conjugate(const ParabolicGerm& f, const TruncSeries& h) {
  if (h.is_zero() || h.low() != 1 || std::abs(h[1] - 1.0) > 1e-14)
    throw GermError("conjugate: h must be tangent to identity");
  int n = std::min(f.series().order(), h.order());
  TruncSeries hi = reversion(h.truncate(n));
  TruncSeries r = compose(h.truncate(n), compose(f.series().truncate(n), hi)).truncate(n);
  return ParabolicGerm(r);
}

Prenormalized prenormalize(const ParabolicGerm& f) {
  int n = f.series().order();
  int k = f.k();
  TruncSeries h = TruncSeries::monomial(1.0, 1, n);
  ParabolicGerm cur = f;
  for (int m = 2; m <= k; ++m) {
    int e = m + k;
    cd e0 = cur.series()[e];
    if (e0 == cd(0.0)) continue;
    TruncSeries step = TruncSeries::monomial(1.0, 1, n) + TruncSeries::monomial(1.0, m, n);
    cd e1 = conjugate(cur, step).series()[e];
    cd c = -e0 / (e1 - e0);
    step = TruncSeries::monomial(1.0, 1, n) + TruncSeries::monomial(c, m, n);
    cur = conjugate(cur, step);
    h = compose(step, h).truncate(n);
  }
  return {cur, h};
}

TruncSeries conjugacy_phi(const ParabolicGerm& f) {
  TruncSeries x = TruncSeries::monomial(1.0, 1, f.series().order());
  TruncSeries d = (f.series() - x) * (1.0 / f.a());
  return nth_root(d, f.k() + 1);
}

TruncSeries lie_flow(const TruncSeries& xi, int order) {
  TruncSeries g = TruncSeries::monomial(1.0, 1, order);
  TruncSeries acc = g;
  for (int n = 1; n < order; ++n) {
    g = (mul(xi, derivative(g)) * (1.0 / n)).truncate(order);
    if (g.is_zero() || g.low() >= order) break;
    acc = (acc + g).truncate(order);
  }
  return acc;
}

TruncSeries infinitesimal_generator(const ParabolicGerm& f) {
  // Order-by-order: the x^m coefficient of the flow is xi_m plus terms in lower xi_j.
  int n = f.series().order();
  int k = f.k();
  std::vector<cd> xi(static_cast<std::size_t>(n), cd(0.0));
  xi[static_cast<std::size_t>(k + 1)] = f.a();
  for (int m = k + 2; m < n; ++m) {
    TruncSeries cur(0, xi);
    TruncSeries fl = lie_flow(cur.truncate(m + 1), m + 1);
    xi[static_cast<std::size_t>(m)] = f.series()[m] - fl[m];
  }
  return TruncSeries(0, xi);
}

ModelEstimate estimate_model_from_orbit(const std::vector<cd>& points, double max_spread) {
  std::size_t M = points.size();
  if (M < 1000) throw GermError("estimate_model_from_orbit: need at least 1000 points");
  std::vector<std::size_t> ladder;
  for (std::size_t m = M - 1; m >= 64; m /= 2) ladder.push_back(m);
  std::reverse(ladder.begin(), ladder.end());
  // Slopes between successive dyadic levels, Richardson-extrapolated in 1/m.
  std::vector<double> ks;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    double m1 = static_cast<double>(ladder[i - 1]), m2 = static_cast<double>(ladder[i]);
    ks.push_back(-(std::log(m2) - std::log(m1)) /
                 (std::log(std::abs(points[ladder[i]])) - std::log(std::abs(points[ladder[i - 1]]))));
  }
  std::size_t L = ks.size();
  if (L < 3) throw GermError("estimate_model_from_orbit: ladder too short");
  double kr = 2 * ks[L - 1] - ks[L - 2];
  double kr_prev = 2 * ks[L - 2] - ks[L - 3];
  double spread = std::abs(kr - kr_prev) / std::abs(kr);
  if (spread > max_spread) throw GermError("estimate_model_from_orbit: non-convergent ladder");
  int k = static_cast<int>(std::lround(kr));
  if (k < 1) k = 1;
  auto a_at = [&](std::size_t m) {
    std::size_t m2 = 2 * m;
    cd d = std::pow(points[m2], -k) - std::pow(points[m], -k);
    return -d / (static_cast<double>(k) * static_cast<double>(m2 - m));
  };
  std::size_t m = (M - 1) / 2;
  cd a = 2.0 * a_at(m) - a_at(m / 2);
  return {kr, a, spread};
}

}  // namespace ptheta
