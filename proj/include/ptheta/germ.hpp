#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ptheta/series.hpp"

namespace ptheta {

struct GermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cd log1p_c(cd u);
cd expm1_c(cd z);

class ParabolicGerm {
 public:
  // Known coefficients of x^1..x^N; N is the highest known exponent.
  ParabolicGerm(const TruncSeries& f, bool exact_model = false);

  int k() const { return k_; }
  cd a() const { return a_; }
  int N() const { return series_.order() - 1; }
  const TruncSeries& series() const { return series_; }
  bool is_model() const { return model_; }
  double eval_radius() const { return r_eval_; }
  void set_eval_radius(double r) { r_eval_ = r; }

  cd operator()(cd x) const;
  cd deriv(cd x) const;
  cd g(cd x) const;        // x - f(x), without cancellation
  cd inverse(cd y) const;  // branch of f^{-1} tangent to identity
  cd t(cd x) const;        // model Fatou weight -x^{-k}/(ak)

  // Attracting petal centres exp(i(pi - arg a + 2 pi j)/k), j = 0..k-1.
  cd attracting_center(int j) const;
  int petal_of(cd x) const;

 private:
  int k_ = 1;
  cd a_;
  TruncSeries series_;
  bool model_ = false;
  double r_eval_ = 0.0;
  std::vector<cd> p_;   // dense f, trailing zeros stripped
  std::vector<cd> dp_;  // dense f'
  std::vector<cd> rev_; // low-order reversion, seeds for inverse
};

struct Orbit {
  cd x0;
  std::vector<cd> points;
  std::vector<cd> t_values;
  int petal = 0;
};

ParabolicGerm model_of(int k, cd a, int N);
ParabolicGerm from_coefficients(const std::vector<cd>& coeffs, int N);

Orbit iterate_orbit(const ParabolicGerm& f, cd x0, int M);

cd residual_invariant(const ParabolicGerm& f);

struct Prenormalized {
  ParabolicGerm germ;
  TruncSeries h;
};
Prenormalized prenormalize(const ParabolicGerm& f);

TruncSeries conjugacy_phi(const ParabolicGerm& f);
ParabolicGerm conjugate(const ParabolicGerm& f, const TruncSeries& h);

TruncSeries lie_flow(const TruncSeries& xi, int order);
TruncSeries infinitesimal_generator(const ParabolicGerm& f);

struct ModelEstimate {
  double k_est;
  cd a_est;
  double spread;
};
ModelEstimate estimate_model_from_orbit(const std::vector<cd>& points, double max_spread = 0.05);

}  // namespace ptheta
