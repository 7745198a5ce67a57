#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace ptheta {

using cd = std::complex<double>;

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated Laurent series c_low x^low + ... + O(x^order).
// Exponents at or above order() are unknown, never implicitly zero.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(int low, std::vector<cd> coeffs);

  static TruncSeries zero(int order);
  static TruncSeries constant(cd c, int order);
  static TruncSeries monomial(cd c, int e, int order);
  // coeffs[i] multiplies x^(low+i); trailing coefficients define the order.
  static TruncSeries from_dense(int low, const std::vector<cd>& coeffs);

  int low() const { return low_; }
  int order() const { return low_ + static_cast<int>(c_.size()); }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cd>& coeffs() const { return c_; }

  // Coefficient of x^e; zero below low(), throws at or beyond order().
  cd operator[](int e) const;
  TruncSeries truncate(int order) const;

  TruncSeries operator-() const;
  TruncSeries operator*(cd s) const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);

  cd eval(cd x) const;

 private:
  void normalize();
  int low_ = 0;
  std::vector<cd> c_;
};

TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries power(const TruncSeries& f, int n);
TruncSeries reciprocal(const TruncSeries& f);
TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner);
TruncSeries reversion(const TruncSeries& f);
TruncSeries nth_root(const TruncSeries& f, int n);

TruncSeries derivative(const TruncSeries& f);
TruncSeries antiderivative(const TruncSeries& f);
cd residue(const TruncSeries& f);

TruncSeries series_exp(const TruncSeries& f);
TruncSeries series_log(const TruncSeries& f);

// Real-exponent power of a series with constant term 1 (principal branch).
TruncSeries unit_power(const TruncSeries& f, cd p);

}  // namespace ptheta
