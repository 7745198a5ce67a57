#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptheta/germ.hpp"
#include "ptheta/series.hpp"

namespace ptheta {

struct FatouError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// psi(x) = sum_{j=-k}^{-1} r_j x^j + rho log x + C + sum_{j>=1} r_j x^j
struct FormalFatou {
  int k = 1;
  cd a;
  std::vector<cd> principal;  // r_{-k} .. r_{-1}
  cd rho;
  cd constant = 0.0;
  TruncSeries tail;           // r_1 x + r_2 x^2 + ...
  TruncSeries generator;      // infinitesimal generator xi
  // d psi / d t = 1 + sum_{j>=1} d_j x^j, with t the model weight.
  TruncSeries dpsi_dt;

  int tail_len() const { return tail.order() - 1; }
  cd r(int j) const;
};

FormalFatou formal_fatou(const ParabolicGerm& f, double residual_tol = 1e-9);

// Principal part + rho*L + C + first J tail terms, with L a chosen value of log x.
cd eval_formal_truncated(const FormalFatou& F, cd x, cd logx, int J);
// Same, with the principal log branch cut along the ray opposite to `center`.
cd eval_formal_truncated(const FormalFatou& F, cd x, int J, cd center);

struct FatouParams {
  int J = 24;             // acceleration depth
  double formal_tol = 1e-16;
  double HB = 8.0;        // |Im t| beyond which Stokes terms are negligible
  long n_max = 100000;
};

class FatouEvaluator {
 public:
  FatouEvaluator(const ParabolicGerm& f, cd x0, FatouParams p = {});

  const ParabolicGerm& germ() const { return f_; }
  const FormalFatou& formal() const { return F_; }
  cd x0() const { return x0_; }
  cd center() const { return c_; }
  int J() const { return J_; }
  double TB() const { return TB_; }
  double HB() const { return p_.HB; }
  cd c0() const { return c0_; }  // raw value at x0

  cd logx(cd x) const;  // log branch continuous across the petal of x0
  cd formal_value(cd x, cd L) const;
  cd formal_deriv(cd x) const;

  // Raw (unnormalized, C = 0) attracting and repelling coordinates.
  cd psi_raw(cd x) const;
  cd psi_rep_raw(cd x) const;
  // Inverses of the raw coordinates.
  cd inverse_raw(cd p) const;
  cd inverse_rep_raw(cd p) const;

  // Normalized so that psi(x0) = 0.
  cd operator()(cd x) const { return psi_raw(x) - c0_; }
  cd inverse(cd tau) const { return inverse_raw(tau + c0_); }
  cd derivative(cd x) const;
  // Number of forward steps used to reach the formal region from x.
  long steps_to_formal(cd x) const;

  // C' of the form psi_raw = t - (rho/k) log t + C' + O(x) (principal log t).
  cd prenormal_constant() const;

  bool in_attracting_region(cd t) const;
  bool in_repelling_region(cd t) const;

 private:
  cd newton_formal(cd q) const;

  ParabolicGerm f_;
  FormalFatou F_;
  FatouParams p_;
  cd x0_;
  cd c_;
  double argc_;
  int J_;
  double TB_;
  cd c0_;
};

cd sectorial_fatou(const FatouEvaluator& E, cd x);
cd fatou_inverse(const FatouEvaluator& E, cd tau);
cd fatou_derivative(const FatouEvaluator& E, cd x);

enum class BorelKind { minor, major };

struct BorelValue {
  bool dirac = false;  // minor transform is (ak)^{-nu/k} delta^{(order)}
  int dirac_order = 0;
  cd dirac_scale = 0.0;
  cd value = 0.0;
};

BorelValue borel_monomial(cd nu, cd s, double alpha, BorelKind kind, int k, cd a);

struct BorelTail {
  cd value;
  double error;
};
BorelTail borel_tail(const FormalFatou& F, cd s, double alpha, int J = 0);

}  // namespace ptheta
