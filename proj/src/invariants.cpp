#include "ptheta/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptheta/special.hpp"

namespace ptheta {

namespace {

constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);

// Least squares by Householder QR; returns x minimizing |A x - b|.
std::vector<cd> lstsq(std::vector<std::vector<cd>> A, std::vector<cd> b) {
  std::size_t rows = A.size(), cols = A.front().size();
  if (rows < cols) throw InvariantError("lstsq: underdetermined system");
  // Column scaling keeps the reflections well conditioned.
  std::vector<double> sc(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) sc[c] = std::max(sc[c], std::abs(A[r][c]));
    if (sc[c] == 0.0) sc[c] = 1.0;
    for (std::size_t r = 0; r < rows; ++r) A[r][c] /= sc[c];
  }
  for (std::size_t c = 0; c < cols; ++c) {
    double norm = 0.0;
    for (std::size_t r = c; r < rows; ++r) norm += std::norm(A[r][c]);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw InvariantError("lstsq: rank deficient basis");
    cd alpha = -std::polar(norm, std::arg(A[c][c]));
    std::vector<cd> v(rows - c);
    for (std::size_t r = c; r < rows; ++r) v[r - c] = A[r][c];
    v[0] -= alpha;
    double vn = 0.0;
    for (auto& z : v) vn += std::norm(z);
    if (vn == 0.0) continue;
    auto reflect = [&](auto get) {
      cd dot = 0.0;
      for (std::size_t r = c; r < rows; ++r) dot += std::conj(v[r - c]) * get(r);
      return 2.0 * dot / vn;
    };
    for (std::size_t cc = c; cc < cols; ++cc) {
      cd f = reflect([&](std::size_t r) { return A[r][cc]; });
      for (std::size_t r = c; r < rows; ++r) A[r][cc] -= f * v[r - c];
    }
    cd f = reflect([&](std::size_t r) { return b[r]; });
    for (std::size_t r = c; r < rows; ++r) b[r] -= f * v[r - c];
  }
  std::vector<cd> x(cols);
  for (std::size_t c = cols; c-- > 0;) {
    cd acc = b[c];
    for (std::size_t cc = c + 1; cc < cols; ++cc) acc -= A[c][cc] * x[cc];
    x[c] = acc / A[c][c];
  }
  for (std::size_t c = 0; c < cols; ++c) x[c] /= sc[c];
  return x;
}

}  // namespace

const EVEntry* EVModulus::find(int j, int m) const {
  for (const auto& e : entries)
    if (e.j == j && e.m == m) return &e;
  return nullptr;
}

int transition_side(int j) {
  if (j < 1) throw InvariantError("transition index must be positive");
  return j % 2 == 1 ? 1 : -1;
}

int transition_petal(int j) {
  if (j < 1) throw InvariantError("transition index must be positive");
  return (j - 1) / 2;
}

cd horn_map(const FatouEvaluator& E, int j, cd t) {
  if (j > 2 * E.germ().k()) throw InvariantError("horn_map: transition index exceeds 2k");
  if (transition_petal(j) != E.germ().petal_of(E.x0()))
    throw InvariantError("horn_map: evaluator belongs to a different petal");
  int side = transition_side(j);
  if (side * t.imag() <= 0.0) throw InvariantError("horn_map: t on the wrong side of the petal");
  if (side > 0) return E.psi_rep_raw(E.inverse_raw(t));
  return E.psi_raw(E.inverse_rep_raw(t));
}

EVModulus fourier_coefficients(const FatouEvaluator& E, int j, const FourierParams& p) {
  if (p.H <= 0.0 || p.samples < 4 || p.modes < 1) throw InvariantError("fourier_coefficients: bad parameters");
  int side = transition_side(j);
  double re0 = side > 0 ? p.re0 : -p.re0;
  auto at_height = [&](double H) {
    std::vector<cd> d(static_cast<std::size_t>(p.samples));
    std::vector<cd> tau(d.size());
    for (int i = 0; i < p.samples; ++i) {
      tau[i] = cd(re0 + static_cast<double>(i) / p.samples, side * H);
      d[i] = horn_map(E, j, tau[i]) - tau[i];
    }
    std::vector<cd> A(static_cast<std::size_t>(p.modes));
    for (int m = 1; m <= p.modes; ++m) {
      cd omega = 2.0 * kPi * I * static_cast<double>(side * m);
      cd acc = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) acc += d[i] * std::exp(-omega * tau[i]);
      A[m - 1] = acc / static_cast<double>(p.samples);
    }
    return A;
  };
  std::vector<cd> A0 = at_height(p.H), A1 = at_height(p.H + 1.0);
  EVModulus M;
  M.method = "horn";
  M.normalization = 0.0;
  for (int m = 1; m <= p.modes; ++m) {
    EVEntry e;
    e.j = j;
    e.m = side * m;
    e.A = A0[m - 1];
    e.error = std::abs(A1[m - 1] - A0[m - 1]);
    // Sampling noise in the horn map is amplified by |e^{-omega tau}| = e^{2 pi m H}.
    double floor = p.noise * std::exp(2.0 * kPi * m * (p.H + 1.0)) * std::max(1.0, std::abs(re0));
    e.below_floor = std::abs(e.A) < 10.0 * floor;
    if (!e.below_floor && e.error > p.fourier_tol * std::max(1.0, std::abs(e.A)) + floor)
      throw InvariantError("fourier_coefficients: H-ladder disagreement");
    M.entries.push_back(e);
  }
  return M;
}

ThetaInvariant invariant_from_theta(const ThetaEvaluator& E, int m, const ThetaFitParams& p) {
  if (m == 0) throw InvariantError("invariant_from_theta: omega must be nonzero");
  const FormalFatou& F = E.fatou().formal();
  int k = F.k;
  cd omega = 2.0 * kPi * I * static_cast<double>(m);
  cd beta = omega * F.rho / static_cast<double>(k) - 1.0;
  bool log_case = std::abs(beta.imag()) < 1e-12 && beta.real() > -0.5 &&
                  std::abs(beta.real() - std::round(beta.real())) < 1e-12;
  if (log_case) throw InvariantError("invariant_from_theta: logarithmic case is not supported");
  bool simple_pole = std::abs(F.rho) < 1e-12;

  struct Sample {
    cd lg;  // log(s - omega) on the chosen branch
    cd d;   // s - omega
    cd J;
  };
  std::vector<Sample> S;
  double a0 = kPi / 2 + p.angle_margin, a1 = 3 * kPi / 2 - p.angle_margin;
  for (int ir = 0; ir < p.radii; ++ir) {
    double r = p.r_min + (p.r_max - p.r_min) * ir / std::max(1, p.radii - 1);
    for (int ia = 0; ia < p.angles; ++ia) {
      double th = a0 + (a1 - a0) * (ia + 0.5) / p.angles;
      cd d = std::polar(r, th);
      // Branch of arg(s - omega): (-3pi/2, pi/2) above 0, (-pi/2, 3pi/2) below.
      double br = m > 0 ? th - 2.0 * kPi : th;
      S.push_back({cd(std::log(r), br), d, E.jump(0, omega + d).value});
    }
  }

  auto fit = [&](int ns, int na) {
    std::vector<std::vector<cd>> A;
    std::vector<cd> b;
    for (const auto& q : S) {
      std::vector<cd> row;
      for (int j = 0; j < ns; ++j) {
        if (simple_pole && j > 0 && j % k == 0) continue;  // integer powers are in the analytic part
        row.push_back(std::exp((beta + static_cast<double>(j) / k) * q.lg));
      }
      if (simple_pole)
        for (int j = 0; j < ns; ++j) row.push_back(std::exp(static_cast<double>(j) / k * q.lg) * q.lg);
      for (int j = 0; j < na; ++j) row.push_back(std::pow(q.d, j));
      A.push_back(std::move(row));
      b.push_back(q.J);
    }
    return lstsq(A, b)[0];
  };
  cd c = fit(p.singular_terms, p.analytic_terms);
  cd c2 = fit(p.singular_terms - 1, p.analytic_terms - 1);
  cd g = rgamma(1.0 - omega * F.rho / static_cast<double>(k));
  ThetaInvariant out;
  out.leading = c;
  out.beta = beta;
  out.A = c * g / omega;
  out.error = std::abs(c - c2) * std::abs(g / omega);
  return out;
}

EVModulus rescale(const EVModulus& M, cd C) {
  EVModulus R = M;
  for (auto& e : R.entries) e.A *= std::exp(2.0 * kPi * I * static_cast<double>(e.m) * C);
  R.normalization += C;
  return R;
}

EquivalenceResult cocycles_equivalent(const EVModulus& M1, const EVModulus& M2, double tol, double floor) {
  const EVEntry* best1 = nullptr;
  const EVEntry* best2 = nullptr;
  double best = 0.0;
  for (const auto& e : M1.entries) {
    const EVEntry* o = M2.find(e.j, e.m);
    if (!o) throw InvariantError("cocycles_equivalent: index sets differ");
    if (e.below_floor || o->below_floor) continue;
    double w = std::min(std::abs(e.A), std::abs(o->A));
    if (w > best) best = w, best1 = &e, best2 = o;
  }
  if (M1.entries.size() != M2.entries.size()) throw InvariantError("cocycles_equivalent: index sets differ");
  if (!best1 || best < floor) {
    bool both_small = true;
    for (const auto& e : M1.entries) {
      const EVEntry* o = M2.find(e.j, e.m);
      if (std::abs(e.A) >= floor || std::abs(o->A) >= floor) both_small = false;
    }
    return {both_small ? Equivalence::indeterminate : Equivalence::inequivalent, std::nullopt, 0.0};
  }
  cd omega = 2.0 * kPi * I * static_cast<double>(best1->m);
  cd C = std::log(best2->A / best1->A) / omega;
  double defect = 0.0;
  bool ok = true;
  for (const auto& e : M1.entries) {
    const EVEntry* o = M2.find(e.j, e.m);
    cd w = 2.0 * kPi * I * static_cast<double>(e.m);
    double d = std::abs(e.A * std::exp(w * C) - o->A);
    double scale = std::max(std::abs(o->A), floor);
    defect = std::max(defect, d / scale);
    if (d > tol * scale) ok = false;
  }
  return {ok ? Equivalence::equivalent : Equivalence::inequivalent, C, defect};
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::inequivalent: return "inequivalent";
    default: return "indeterminate";
  }
}

}  // namespace ptheta
