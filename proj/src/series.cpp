#include "ptheta/series.hpp"

#include <algorithm>
#include <cmath>

namespace ptheta {

TruncSeries::TruncSeries(int low, std::vector<cd> coeffs) : low_(low), c_(std::move(coeffs)) {
  normalize();
}

void TruncSeries::normalize() {
  std::size_t z = 0;
  while (z < c_.size() && c_[z] == cd(0.0)) ++z;
  if (z) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(z));
    low_ += static_cast<int>(z);
  }
}

TruncSeries TruncSeries::zero(int order) { return TruncSeries(order, {}); }

TruncSeries TruncSeries::constant(cd c, int order) {
  return monomial(c, 0, order);
}

TruncSeries TruncSeries::monomial(cd c, int e, int order) {
  if (order <= e) throw SeriesError("monomial: order must exceed exponent");
  std::vector<cd> v(static_cast<std::size_t>(order - e), cd(0.0));
  v[0] = c;
  return TruncSeries(e, std::move(v));
}

TruncSeries TruncSeries::from_dense(int low, const std::vector<cd>& coeffs) {
  return TruncSeries(low, coeffs);
}

cd TruncSeries::operator[](int e) const {
  if (e >= order()) throw SeriesError("coefficient requested beyond truncation order");
  if (e < low_) return 0.0;
  return c_[static_cast<std::size_t>(e - low_)];
}

TruncSeries TruncSeries::truncate(int ord) const {
  if (ord >= order()) return *this;
  if (ord <= low_) return zero(ord);
  return TruncSeries(low_, std::vector<cd>(c_.begin(), c_.begin() + (ord - low_)));
}

TruncSeries TruncSeries::operator-() const { return *this * cd(-1.0); }

TruncSeries TruncSeries::operator*(cd s) const {
  std::vector<cd> v(c_);
  for (auto& z : v) z *= s;
  if (s == cd(0.0)) return zero(order());
  return TruncSeries(low_, std::move(v));
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  int ord = std::min(a.order(), b.order());
  int lo = std::min(a.low(), b.low());
  if (lo >= ord) return TruncSeries::zero(ord);
  std::vector<cd> v(static_cast<std::size_t>(ord - lo), cd(0.0));
  for (int e = lo; e < ord; ++e) v[static_cast<std::size_t>(e - lo)] = a[e] + b[e];
  return TruncSeries(lo, std::move(v));
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

cd TruncSeries::eval(cd x) const {
  if (c_.empty()) return 0.0;
  cd acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  if (low_ != 0) acc *= std::pow(x, low_);
  return acc;
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  int ord = std::min(a.low() + b.order(), b.low() + a.order());
  int lo = a.low() + b.low();
  if (a.is_zero() || b.is_zero() || lo >= ord) return TruncSeries::zero(ord);
  std::vector<cd> v(static_cast<std::size_t>(ord - lo), cd(0.0));
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size() && i < v.size(); ++i) {
    if (ca[i] == cd(0.0)) continue;
    for (std::size_t j = 0; j < cb.size() && i + j < v.size(); ++j) v[i + j] += ca[i] * cb[j];
  }
  return TruncSeries(lo, std::move(v));
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

TruncSeries reciprocal(const TruncSeries& f) {
  if (f.is_zero()) throw SeriesError("reciprocal of zero series");
  const auto& c = f.coeffs();
  std::size_t n = c.size();
  std::vector<cd> g(n, cd(0.0));
  g[0] = 1.0 / c[0];
  for (std::size_t i = 1; i < n; ++i) {
    cd s = 0.0;
    for (std::size_t j = 1; j <= i; ++j) s += c[j] * g[i - j];
    g[i] = -s * g[0];
  }
  return TruncSeries(-f.low(), std::move(g));
}

TruncSeries power(const TruncSeries& f, int n) {
  if (n < 0) return power(reciprocal(f), -n);
  if (f.is_zero()) {
    if (n == 0) throw SeriesError("zero series to the power 0");
    return TruncSeries::zero(f.order() + (n - 1) * f.low());
  }
  int rel = f.order() - f.low();
  TruncSeries r = TruncSeries::constant(1.0, rel);
  TruncSeries b = f;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner) {
  if (inner.is_zero() || inner.low() < 1)
    throw SeriesError("compose: inner series must vanish at 0 with nonzero leading term");
  int l = inner.low();
  int rel = inner.order() - l;
  int ord = std::min(outer.order() * l, outer.low() * l + rel);
  if (outer.is_zero()) return TruncSeries::zero(ord);
  TruncSeries acc = TruncSeries::zero(ord);
  TruncSeries p = power(inner, outer.low()).truncate(ord);
  for (int e = outer.low(); e < outer.order(); ++e) {
    if (e * l >= ord) break;
    cd c = outer[e];
    if (c != cd(0.0)) acc = acc + (p * c).truncate(ord);
    p = mul(p, inner).truncate(ord);
  }
  return acc.truncate(ord);
}

TruncSeries derivative(const TruncSeries& f) {
  std::vector<cd> v(f.coeffs());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= static_cast<double>(f.low() + static_cast<int>(i));
  if (v.empty()) return TruncSeries::zero(f.order() - 1);
  return TruncSeries(f.low() - 1, std::move(v));
}

TruncSeries antiderivative(const TruncSeries& f) {
  if (f.low() <= -1 && f.order() > -1 && f[-1] != cd(0.0))
    throw SeriesError("antiderivative: nonzero x^-1 coefficient");
  std::vector<cd> v(f.coeffs());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int e = f.low() + static_cast<int>(i);
    v[i] = (e == -1) ? cd(0.0) : v[i] / static_cast<double>(e + 1);
  }
  if (v.empty()) return TruncSeries::zero(f.order() + 1);
  return TruncSeries(f.low() + 1, std::move(v));
}

cd residue(const TruncSeries& f) {
  if (f.order() <= -1) throw SeriesError("residue: x^-1 coefficient unknown");
  return f[-1];
}

TruncSeries series_exp(const TruncSeries& f) {
  if (!f.is_zero() && f.low() < 1) throw SeriesError("exp: series must vanish at 0");
  int n = std::max(f.order(), 1);
  std::vector<cd> g(static_cast<std::size_t>(n), cd(0.0));
  g[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    cd s = 0.0;
    for (int j = 1; j <= i; ++j) s += static_cast<double>(j) * f[j] * g[static_cast<std::size_t>(i - j)];
    g[static_cast<std::size_t>(i)] = s / static_cast<double>(i);
  }
  return TruncSeries(0, std::move(g));
}

TruncSeries series_log(const TruncSeries& f) {
  if (f.low() != 0 || std::abs(f[0] - 1.0) > 1e-12) throw SeriesError("log: constant term must be 1");
  TruncSeries q = mul(derivative(f), reciprocal(f));
  return antiderivative(q);
}

TruncSeries unit_power(const TruncSeries& f, cd p) {
  if (f.low() != 0) throw SeriesError("unit_power: series must have nonzero constant term");
  const auto& c = f.coeffs();
  std::size_t n = c.size();
  std::vector<cd> g(n, cd(0.0));
  g[0] = std::pow(c[0], p);
  for (std::size_t i = 1; i < n; ++i) {
    cd s = 0.0;
    for (std::size_t j = 1; j <= i; ++j)
      s += (p * static_cast<double>(j) - static_cast<double>(i - j)) * c[j] * g[i - j];
    g[i] = s / (static_cast<double>(i) * c[0]);
  }
  return TruncSeries(0, std::move(g));
}

TruncSeries nth_root(const TruncSeries& f, int n) {
  if (n <= 0) throw SeriesError("nth_root: n must be positive");
  if (f.is_zero()) throw SeriesError("nth_root of zero series");
  if (f.low() % n != 0) throw SeriesError("nth_root: leading exponent not divisible by n");
  TruncSeries unit(0, f.coeffs());
  TruncSeries r = unit_power(unit, 1.0 / n);
  return TruncSeries(f.low() / n, r.coeffs());
}

TruncSeries reversion(const TruncSeries& f) {
  if (f.is_zero() || f.low() != 1) throw SeriesError("reversion: zero linear coefficient");
  int n = f.order();
  TruncSeries x = TruncSeries::monomial(1.0, 1, n);
  TruncSeries g = x * (1.0 / f[1]);
  TruncSeries fp = derivative(f);
  for (int it = 0; it < 64; ++it) {
    TruncSeries r = (compose(f, g) - x).truncate(n);
    if (r.is_zero()) break;
    double m = 0;
    for (auto z : r.coeffs()) m = std::max(m, std::abs(z));
    TruncSeries step = mul(r, reciprocal(compose(fp, g))).truncate(n);
    g = (g - step).truncate(n);
    if (m < 1e-300) break;
    if (it > 2 * static_cast<int>(std::log2(n + 1)) + 4) break;
  }
  return g;
}

}  // namespace ptheta
