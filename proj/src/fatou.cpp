#include "ptheta/fatou.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptheta/special.hpp"

namespace ptheta {

cd FormalFatou::r(int j) const {
  if (j < 0) {
    if (j < -k) return 0.0;
    return principal[static_cast<std::size_t>(j + k)];
  }
  if (j == 0) return constant;
  return tail[j];
}

FormalFatou formal_fatou(const ParabolicGerm& f, double residual_tol) {
  FormalFatou F;
  F.k = f.k();
  F.a = f.a();
  int k = f.k();
  F.generator = infinitesimal_generator(f);
  TruncSeries R = reciprocal(F.generator);
  F.rho = residue(R);
  TruncSeries Rm = R - TruncSeries::monomial(F.rho, -1, R.order());
  TruncSeries psi = antiderivative(Rm);
  F.principal.resize(static_cast<std::size_t>(k));
  for (int j = -k; j < 0; ++j) F.principal[static_cast<std::size_t>(j + k)] = psi[j];
  std::vector<cd> tail;
  for (int j = 1; j < psi.order(); ++j) tail.push_back(psi[j]);
  if (tail.empty()) throw FatouError("formal_fatou: truncation too short for a tail");
  F.tail = TruncSeries(1, tail);
  F.dpsi_dt = mul(TruncSeries::monomial(f.a(), k + 1, R.order() + 2 * k + 2), R);

  // Abel residual psi(f) - psi - 1, the log part entering as rho*log(f/x).
  TruncSeries P = psi.truncate(psi.order());
  TruncSeries fx(0, f.series().coeffs());
  if (f.series().low() != 1) throw FatouError("formal_fatou: malformed germ");
  TruncSeries res = compose(P, f.series()) - P + series_log(fx) * F.rho -
                    TruncSeries::constant(1.0, P.order());
  // Rounding in the composition scales with both psi and the germ coefficients entering at order e.
  double scale = 1.0, lead = std::abs(psi[-k]);
  for (int e = res.low(); e < res.order(); ++e) {
    if (e + k < psi.order()) scale = std::max(scale, std::abs(psi[std::max(e + k, psi.low())]));
    if (e + k + 1 < f.series().order()) scale = std::max(scale, lead * std::abs(f.series()[e + k + 1]));
    if (std::abs(res[e]) > residual_tol * scale)
      throw FatouError("formal_fatou: Abel residual exceeds tolerance");
  }
  return F;
}

cd eval_formal_truncated(const FormalFatou& F, cd x, cd logx, int J) {
  cd y = 1.0 / x;
  cd pr = 0.0;
  for (int j = F.k; j >= 1; --j) pr = (pr + F.principal[static_cast<std::size_t>(F.k - j)]) * y;
  J = std::min(J, F.tail_len());
  cd tl = 0.0;
  for (int j = J; j >= 1; --j) tl = (tl + F.tail[j]) * x;
  return pr + F.rho * logx + F.constant + tl;
}

cd eval_formal_truncated(const FormalFatou& F, cd x, int J, cd center) {
  cd L = std::log(x / center) + cd(0.0, std::arg(center));
  return eval_formal_truncated(F, x, L, J);
}

FatouEvaluator::FatouEvaluator(const ParabolicGerm& f, cd x0, FatouParams p)
    : f_(f), F_(formal_fatou(f)), p_(p), x0_(x0) {
  c_ = f_.attracting_center(f_.petal_of(x0));
  argc_ = std::arg(c_);
  J_ = std::max(1, std::min(p_.J, F_.tail_len() - 3));
  double ak = std::abs(f_.a()) * f_.k();
  TB_ = 12.0;
  for (; TB_ < 1e6; TB_ *= 1.15) {
    double ax = std::pow(ak * TB_, -1.0 / f_.k());
    double err = 0.0;
    for (int j = J_ + 1; j <= std::min(J_ + 3, F_.tail_len()); ++j)
      err += std::abs(F_.tail[j]) * std::pow(ax, j);
    if (err < p_.formal_tol) break;
  }
  c0_ = psi_raw(x0);
}

cd FatouEvaluator::logx(cd x) const { return std::log(x / c_) + cd(0.0, argc_); }

cd FatouEvaluator::formal_value(cd x, cd L) const { return eval_formal_truncated(F_, x, L, J_); }

cd FatouEvaluator::formal_deriv(cd x) const {
  int k = F_.k;
  cd y = 1.0 / x;
  cd pr = 0.0;
  for (int j = k; j >= 1; --j)
    pr = (pr - static_cast<double>(j) * F_.principal[static_cast<std::size_t>(k - j)]) * y;
  pr *= y;
  cd tl = 0.0;
  for (int j = J_; j >= 1; --j) tl = tl * x + static_cast<double>(j) * F_.tail[j];
  return pr + F_.rho * y + tl;
}

bool FatouEvaluator::in_attracting_region(cd t) const {
  return std::abs(t) >= TB_ && (t.real() >= 0.0 || std::abs(t.imag()) >= p_.HB);
}

bool FatouEvaluator::in_repelling_region(cd t) const {
  return std::abs(t) >= TB_ && (t.real() <= 0.0 || std::abs(t.imag()) >= p_.HB);
}

cd FatouEvaluator::psi_raw(cd x) const {
  cd L = logx(x);
  long n = 0;
  while (!in_attracting_region(f_.t(x))) {
    if (++n > p_.n_max) throw FatouError("sectorial_fatou: no convergence within n_max");
    cd y = f_(x);
    L += std::log(y / x);
    x = y;
  }
  return formal_value(x, L) - static_cast<double>(n);
}

long FatouEvaluator::steps_to_formal(cd x) const {
  long n = 0;
  while (!in_attracting_region(f_.t(x))) {
    if (++n > p_.n_max) throw FatouError("sectorial_fatou: no convergence within n_max");
    x = f_(x);
  }
  return n;
}

cd FatouEvaluator::psi_rep_raw(cd x) const {
  cd L = logx(x);
  long n = 0;
  while (!in_repelling_region(f_.t(x))) {
    if (++n > p_.n_max) throw FatouError("repelling Fatou: no convergence within n_max");
    cd y = f_.inverse(x);
    L += std::log(y / x);
    x = y;
  }
  return formal_value(x, L) + static_cast<double>(n);
}

cd FatouEvaluator::newton_formal(cd q) const {
  int k = f_.k();
  double ak = std::abs(f_.a()) * k;
  cd xs = c_ * std::pow(ak * q, -1.0 / k);
  cd Ls = cd(std::log(std::abs(xs)), argc_ - std::arg(q) / k);
  cd x = xs;
  for (int it = 0; it < 80; ++it) {
    cd val = formal_value(x, Ls + std::log(x / xs)) - q;
    cd dx = val / formal_deriv(x);
    x -= dx;
    if (std::abs(dx) <= 4e-16 * std::abs(x)) break;
    if (it == 79) throw FatouError("fatou_inverse: Newton did not converge");
  }
  return x;
}

cd FatouEvaluator::inverse_raw(cd p) const {
  long n = 0;
  auto ok = [&](cd q) {
    return std::abs(q) >= 1.2 * TB_ && (q.real() >= 0.0 || std::abs(q.imag()) >= p_.HB + 1.0);
  };
  while (!ok(p + static_cast<double>(n))) {
    if (++n > p_.n_max) throw FatouError("fatou_inverse: target outside image");
  }
  cd x = newton_formal(p + static_cast<double>(n));
  for (long i = 0; i < n; ++i) x = f_.inverse(x);
  return x;
}

cd FatouEvaluator::inverse_rep_raw(cd p) const {
  long n = 0;
  auto ok = [&](cd q) {
    return std::abs(q) >= 1.2 * TB_ && (q.real() <= 0.0 || std::abs(q.imag()) >= p_.HB + 1.0);
  };
  while (!ok(p - static_cast<double>(n))) {
    if (++n > p_.n_max) throw FatouError("repelling inverse: target outside image");
  }
  cd x = newton_formal(p - static_cast<double>(n));
  for (long i = 0; i < n; ++i) x = f_(x);
  return x;
}

cd FatouEvaluator::derivative(cd x) const {
  cd prod = 1.0;
  long n = 0;
  while (!in_attracting_region(f_.t(x))) {
    if (++n > p_.n_max) throw FatouError("fatou_derivative: no convergence within n_max");
    prod *= f_.deriv(x);
    x = f_(x);
  }
  return formal_deriv(x) * prod;
}

cd FatouEvaluator::prenormal_constant() const {
  double ak = std::abs(f_.a()) * f_.k();
  return F_.rho * cd(-std::log(ak) / f_.k(), argc_);
}

cd sectorial_fatou(const FatouEvaluator& E, cd x) { return E(x); }
cd fatou_inverse(const FatouEvaluator& E, cd tau) { return E.inverse(tau); }
cd fatou_derivative(const FatouEvaluator& E, cd x) { return E.derivative(x); }

namespace {
// Logarithm of s/(ak) continuous off the ray opposite to e^{i alpha}.
cd log_ray(cd s, double alpha, int k, cd a) {
  cd ak = a * static_cast<double>(k);
  return std::log(s * std::polar(1.0, -alpha)) - std::log(std::abs(ak)) +
         cd(0.0, alpha - std::arg(ak));
}
// Logarithm with its cut along e^{i alpha} R_{>=0}, jump +2 pi i across it.
cd log_cut(cd s, double alpha) {
  return std::log(s * std::polar(1.0, -(alpha - std::numbers::pi))) + cd(0.0, alpha - std::numbers::pi);
}
}  // namespace

BorelValue borel_monomial(cd nu, cd s, double alpha, BorelKind kind, int k, cd a) {
  BorelValue out;
  cd mu = nu / static_cast<double>(k);
  cd ak = a * static_cast<double>(k);
  bool integer = mu.imag() == 0.0 && mu.real() == std::round(mu.real());
  if (kind == BorelKind::minor) {
    if (integer && mu.real() <= 0.0) {
      out.dirac = true;
      out.dirac_order = -static_cast<int>(std::lround(mu.real()));
      out.dirac_scale = std::pow(ak, -mu);
      return out;
    }
    out.value = rgamma(mu) / ak * std::exp((mu - 1.0) * log_ray(s, alpha, k, a));
    return out;
  }
  if (integer && mu.real() > 0.0) {
    out.value = rgamma(mu) / (2.0 * std::numbers::pi * cd(0, 1) * ak) * std::pow(s / ak, mu - 1.0) *
                log_cut(s, alpha);
    return out;
  }
  // (-s/(ak))^{mu-1} with the cut on the ray itself.
  cd lg = log_cut(s, alpha) - std::log(-ak);
  out.value = -gamma(1.0 - mu) / (2.0 * std::numbers::pi * cd(0, 1) * ak) * std::exp((mu - 1.0) * lg);
  return out;
}

BorelTail borel_tail(const FormalFatou& F, cd s, double alpha, int J) {
  if (J <= 0) J = F.tail_len();
  J = std::min(J, F.tail_len());
  cd sum = 0.0;
  double last = 0.0, prev = 0.0;
  for (int j = 1; j <= J; ++j) {
    cd term = F.tail[j] * borel_monomial(static_cast<double>(j), s, alpha, BorelKind::minor, F.k, F.a).value;
    sum += term;
    prev = last;
    last = std::abs(term);
  }
  double err = std::max(last, prev);
  if (J >= 4 && err > 1e-3 * std::max(1.0, std::abs(sum)))
    throw FatouError("borel_tail: |s| too large for the truncated tail");
  return {sum, err};
}

}  // namespace ptheta
