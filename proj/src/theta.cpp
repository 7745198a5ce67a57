#include "ptheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "ptheta/special.hpp"

namespace ptheta {

namespace {

constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);

cd log1m(cd q) { return std::abs(q) < 0.5 ? log1p_c(-q) : std::log(1.0 - q); }

// log B_m(p), choosing the expansion in the small one of e^{2 pi i p}, e^{-2 pi i p}.
cd log_bump(int m, cd p) {
  if (p.imag() > 0.0)
    return cd(0.0, kPi) + 2.0 * kPi * I * static_cast<double>(m) * p - log1m(std::exp(2.0 * kPi * I * p));
  return 2.0 * kPi * I * static_cast<double>(m - 1) * p - log1m(std::exp(-2.0 * kPi * I * p));
}

std::string key_of(cd s) {
  double v[2] = {s.real(), s.imag()};
  return std::string(reinterpret_cast<const char*>(v), sizeof(v));
}

}  // namespace

std::string to_string(const SheetPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << p.s.real() << ',' << p.s.imag() << ";crossings=";
  for (std::size_t i = 0; i < p.crossings.size(); ++i) {
    if (i) os << ',';
    os << p.crossings[i].m << (p.crossings[i].dir > 0 ? '+' : '-');
  }
  return os.str();
}

SheetPoint parse_sheet_point(const std::string& text) {
  SheetPoint p;
  auto semi = text.find(';');
  std::string head = text.substr(0, semi);
  auto comma = head.find(',');
  if (comma == std::string::npos) throw ThetaError("sheet point: expected 're,im'");
  try {
    p.s = cd(std::stod(head.substr(0, comma)), std::stod(head.substr(comma + 1)));
  } catch (const std::exception&) {
    throw ThetaError("sheet point: bad coordinates");
  }
  if (semi == std::string::npos) return p;
  std::string tail = text.substr(semi + 1);
  const std::string tag = "crossings=";
  if (tail.rfind(tag, 0) != 0) throw ThetaError("sheet point: expected 'crossings='");
  tail = tail.substr(tag.size());
  std::stringstream ss(tail);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char d = item.back();
    if (d != '+' && d != '-') throw ThetaError("sheet point: crossing needs a trailing + or -");
    try {
      p.crossings.push_back({std::stoi(item.substr(0, item.size() - 1)), d == '+' ? 1 : -1});
    } catch (const std::exception&) {
      throw ThetaError("sheet point: bad crossing '" + item + "'");
    }
  }
  return p;
}

ThetaEvaluator::ThetaEvaluator(const ParabolicGerm& f, cd x0, ThetaParams p, FatouParams fp)
    : E_(f, x0, fp), p_(p), orbit_x_(x0) {}

cd ThetaEvaluator::orbit_t(std::size_t n) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  while (orbit_t_.size() <= n) {
    orbit_t_.push_back(germ().t(orbit_x_));
    orbit_x_ = germ()(orbit_x_);
  }
  return orbit_t_[n];
}

Value ThetaEvaluator::direct(cd s) const { return scale_back(direct_scaled(s), s); }

Value ThetaEvaluator::scale_back(Value v, cd s) const {
  cd e = std::exp(-s * t0());
  return {v.value * e, v.error * std::abs(e)};
}

Value ThetaEvaluator::direct_scaled(cd s) const {
  if (s.real() < p_.direct_min) throw ThetaError("theta_direct: Re s below the direct-sum threshold");
  double q = 1.0 / (1.0 - std::exp(-s.real()));
  cd sum = 0.0;
  for (std::size_t n = 0; n < 2000000; ++n) {
    cd term = std::exp(-s * (orbit_t(n) - t0()));
    sum += term;
    double bound = std::abs(term) * q;
    if (n > 4 && bound < 1e-17 * std::max(std::abs(sum), 1e-300)) return {sum, bound};
  }
  throw ThetaError("theta_direct: orbit sum did not converge");
}

const ThetaEvaluator::Line& ThetaEvaluator::line(double alpha, int n) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto it = lines_.find({alpha, n});
  if (it != lines_.end()) return *it->second;
  auto L = std::make_unique<Line>();
  cd dir = I * std::polar(1.0, -alpha);
  L->dpsi = dir * p_.h;
  L->psi.reserve(2 * n + 1);
  L->T.reserve(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    cd psi = p_.b + dir * (j * p_.h);
    L->psi.push_back(psi);
    L->T.push_back(germ().t(E_.inverse(psi)));
  }
  auto& ref = *L;
  lines_.emplace(std::make_pair(alpha, n), std::move(L));
  return ref;
}

const std::vector<cd>& ThetaEvaluator::line_weights(const Line& L, int m) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto& W = const_cast<Line&>(L).weights;
  auto it = W.find(m);
  if (it != W.end()) return it->second;
  std::vector<cd> w(L.psi.size());
  cd ld = std::log(L.dpsi);
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = log_bump(m, L.psi[j]) + ld;
  return W.emplace(m, std::move(w)).first->second;
}

int ThetaEvaluator::strip_index(cd s, double alpha) const {
  double c = std::cos(alpha);
  if (std::abs(c) < 1e-3) throw ThetaError("strip: cut direction too close to vertical");
  double mu = (s * std::polar(1.0, -alpha)).imag() / (2.0 * kPi * c);
  double fl = std::floor(mu);
  if (std::min(mu - fl, fl + 1.0 - mu) * 2.0 * kPi * std::abs(c) < 1e-12)
    throw ThetaError("strip: s lies on a strip boundary");
  return static_cast<int>(fl) + 1;
}

Value ThetaEvaluator::strip(cd s, int m, double alpha) const {
  return scale_back(strip_scaled(s, m, alpha), s);
}

Value ThetaEvaluator::strip_scaled(cd s, int m, double alpha) const {
  if (strip_index(s, alpha) != m) throw ThetaError("theta_strip: s is outside strip m");
  int n = static_cast<int>(std::lround(p_.U / p_.h));
  const int n_max = static_cast<int>(std::lround(p_.U_max / p_.h));
  const Line* L = &line(alpha, n);
  for (;;) {
    const auto& W = line_weights(*L, m);
    cd t0s = s * t0();
    auto term = [&](std::size_t j) { return std::exp(W[j] - s * L->T[j] + t0s); };
    cd full = 0.0, half = 0.0;
    double l1 = 0.0;
    for (std::size_t j = 0; j < W.size(); ++j) {
      cd v = term(j);
      full += v;
      l1 += std::abs(v);
      if (j % 2 == 0) half += v;
    }
    // The trapezoid error decays like e^{-c/h}: the step-2h discrepancy squared, relative.
    double d2 = std::abs(2.0 * half - full);
    double ends = (std::abs(term(0)) + std::abs(term(W.size() - 1))) / p_.h;
    // Close to a cut the integrand decays slowly along the line; lengthen it.
    if (ends > 1e-2 * p_.quad_tol * l1 && 2 * n <= n_max) {
      try {
        L = &line(alpha, 2 * n);
        n *= 2;
        continue;
      } catch (const FatouError&) {
        // the far line is out of reach of the inverse Fatou map; keep the shorter one
      }
    }
    double err = d2 * d2 / std::max(std::abs(full), 1e-300) + ends + 1e-16 * l1;
    return {full, err};
  }
}

Value ThetaEvaluator::main(cd s) const { return scale_back(main_scaled(s), s); }

Value ThetaEvaluator::main_scaled(cd s) const {
  std::string k = key_of(s);
  {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
  }
  Value v = main_uncached(s);
  std::lock_guard<std::recursive_mutex> lk(mu_);
  memo_.emplace(k, v);
  return v;
}

Value ThetaEvaluator::main_uncached(cd s) const {
  if (s.real() >= 0.3) return direct_scaled(s);
  double a = p_.alpha;
  double c = std::cos(a);
  double mu = (s * std::polar(1.0, -a)).imag() / (2.0 * kPi * c);
  double near = std::round(mu);
  double dist = std::abs(mu - near) * 2.0 * kPi * std::abs(c);
  if (dist >= 0.25) return strip_scaled(s, static_cast<int>(std::floor(mu)) + 1, a);
  if (s.real() >= p_.direct_min) return direct_scaled(s);
  int mc = static_cast<int>(near);
  if (mu >= near) {
    double at = a + p_.tilt;
    if (strip_index(s, at) != mc + 1) throw ThetaError("theta: s too close to a singular point");
    return strip_scaled(s, mc + 1, at);
  }
  double at = a - p_.tilt;
  if (strip_index(s, at) != mc) throw ThetaError("theta: s too close to a singular point");
  return strip_scaled(s, mc, at);
}

const ThetaEvaluator::March& ThetaEvaluator::march(int sign, int panels) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  March& M = sign > 0 ? march_up_ : march_dn_;
  const GaussRule& g = gauss_legendre(p_.leg_nodes);
  std::size_t n = g.x.size();
  if (M.panels == 0) {
    M.last.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cd psi = cd(p_.b, sign * p_.H1) - 0.5 * (1.0 + g.x[i]);
      M.last[i] = E_.inverse(psi);
      M.T.push_back(germ().t(M.last[i]));
    }
    M.panels = 1;
  }
  while (M.panels < panels) {
    for (std::size_t i = 0; i < n; ++i) {
      M.last[i] = germ().inverse(M.last[i]);
      M.T.push_back(germ().t(M.last[i]));
    }
    M.panels++;
  }
  return M;
}

Value ThetaEvaluator::jump(int m, cd s) const {
  cd omega = 2.0 * kPi * I * static_cast<double>(m);
  cd d = s - omega;
  const GaussRule& g = gauss_legendre(p_.leg_nodes);
  std::size_t n = g.x.size();
  auto F = [&](cd psi, cd T) { return std::exp(omega * psi - s * T); };

  // Vertical segment b + i H1 -> b - i H1.
  {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (vert_psi_.empty()) {
      int panels = static_cast<int>(std::ceil(2.0 * p_.H1 / 0.5));
      double len = 2.0 * p_.H1 / panels;
      for (int q = 0; q < panels; ++q) {
        double y0 = p_.H1 - q * len;
        for (std::size_t i = 0; i < n; ++i) {
          double y = y0 - 0.5 * len * (1.0 + g.x[i]);
          cd psi(p_.b, y);
          vert_psi_.push_back(psi);
          vert_T_.push_back(germ().t(E_.inverse(psi)));
          vert_w_.push_back(-I * 0.5 * len * g.w[i]);
        }
      }
    }
  }
  cd acc = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < vert_psi_.size(); ++j) {
    cd term = vert_w_[j] * F(vert_psi_[j], vert_T_[j]);
    acc += term;
    scale += std::abs(term);
  }

  static const double gammas[] = {0.0, 0.3, 0.6, 0.9, 1.2};
  double tail = 0.0;
  for (int sign : {1, -1}) {
    // sign = +1: upper leg, direction e^{i(pi - gamma)}; -1: lower leg, e^{i(pi + gamma)}.
    double best = -1e300, gbest = 0.0, r0 = 0.0;
    for (double gm : gammas) {
      double rate = -(d * std::polar(1.0, -sign * gm)).real();
      if (gm == 0.0) r0 = rate;
      if (rate > best + 1e-12) best = rate, gbest = gm;
    }
    if (best < 0.02) throw ThetaError("theta_jump: no decaying direction for the contour legs");
    if (r0 >= 0.2 && r0 >= 0.5 * best) gbest = 0.0;
    cd base(p_.b, sign * p_.H1);
    cd dir = std::polar(1.0, kPi - sign * gbest);
    cd leg = 0.0;
    double maxmag = 0.0, last = 0.0;
    int cap = gbest == 0.0 ? 40000 : 4000;
    int q = 0;
    for (; q < cap; ++q) {
      cd panel = 0.0;
      if (gbest == 0.0) {
        const March& M = march(sign, q + 1);
        for (std::size_t i = 0; i < n; ++i) {
          cd psi = base - static_cast<double>(q) - 0.5 * (1.0 + g.x[i]);
          cd term = 0.5 * g.w[i] * F(psi, M.T[static_cast<std::size_t>(q) * n + i]);
          panel += term;
          maxmag = std::max(maxmag, std::abs(term));
        }
        panel *= dir;
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          cd psi = base + dir * (q + 0.5 * (1.0 + g.x[i]));
          cd term = 0.5 * g.w[i] * F(psi, germ().t(E_.inverse(psi)));
          panel += term;
          maxmag = std::max(maxmag, std::abs(term));
        }
        panel *= dir;
      }
      leg += panel;
      scale += std::abs(panel);
      last = std::abs(panel);
      if (q >= 4 && last < 1e-17 * std::max({std::abs(acc + leg), maxmag, 1e-300})) break;
    }
    if (q >= cap) throw ThetaError("theta_jump: leg truncation cap reached");
    tail += last;
    // Upper leg is traversed toward b, lower leg away from it.
    acc += sign > 0 ? -leg : leg;
  }
  return {acc, tail + 1e-15 * scale};
}

Value ThetaEvaluator::continued(const SheetPoint& p) const {
  if (static_cast<int>(p.crossings.size()) > p_.max_crossings)
    throw ThetaError("theta_continue: too many crossings");
  Value v = main(p.s);
  for (const Crossing& c : p.crossings) {
    Value j = jump(c.m, p.s);
    v.value += c.dir > 0 ? -j.value : j.value;
    v.error += j.error;
  }
  return v;
}

Value ThetaEvaluator::hankel_transform(int m, cd x) const {
  cd dt = germ().t(x) - t0();
  auto F = [&](cd s) { return main_scaled(s).value / s * std::exp(s * dt); };
  ContourSpec spec;
  spec.anchor = 2.0 * kPi * I * static_cast<double>(m);
  spec.direction = p_.alpha;
  spec.radius = p_.hankel_radius;
  QuadConfig cfg;
  cfg.tol = p_.quad_tol;
  cfg.tail_tol = 1e-14;
  cfg.max_doublings = 2;
  QuadResult r = hankel_integral(F, spec, cfg);
  cd k = 1.0 / (2.0 * kPi * I);
  return {r.value * k, r.error / (2.0 * kPi)};
}

Value ThetaEvaluator::residue_at_zero(double r) const {
  auto once = [&](int nodes) {
    const GaussRule& g = gauss_legendre(nodes);
    cd acc = 0.0;
    const int panels = 8;
    for (int q = 0; q < panels; ++q) {
      double t0 = -kPi + q * 2.0 * kPi / panels, t1 = t0 + 2.0 * kPi / panels;
      double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        cd s = std::polar(r, mid + half * g.x[i]);
        acc += g.w[i] * half * main(s).value * I * s;
      }
    }
    return acc / (2.0 * kPi * I);
  };
  cd a = once(24), b = once(48);
  cd corr = cut_correction(r);
  return {b - corr, std::abs(b - a)};
}

cd ThetaEvaluator::cut_correction(double r) const {
  const FormalFatou& F = E_.formal();
  int k = F.k;
  double ak = std::abs(F.a) * k;
  cd c = E_.center();
  cd sum = 0.0;
  for (int j = 1; j < F.dpsi_dt.order(); ++j) {
    double mu = static_cast<double>(j) / k;
    cd cm = F.dpsi_dt[j] * std::pow(c, j) * std::pow(ak, -mu);
    cd term = cm * std::pow(r, mu) * rgamma(mu + 1.0);
    sum += term;
    if (j > 2 * k && std::abs(term) < 1e-18) break;
  }
  return sum;
}

Value theta_direct(const ThetaEvaluator& E, cd s) { return E.direct(s); }
Value theta_strip(const ThetaEvaluator& E, cd s, int m) { return E.strip(s, m); }
Value theta_jump(const ThetaEvaluator& E, int m, cd s) { return E.jump(m, s); }
Value theta_continue(const ThetaEvaluator& E, const SheetPoint& p) { return E.continued(p); }

Recovery recover_fatou(const ThetaEvaluator& E, cd x) {
  Value v = E.hankel_transform(0, x);
  cd psi = E.fatou()(x);
  return {v.value, v.error, psi, v.value - psi};
}

BVCheck verify_bv_identity(const ThetaEvaluator& E, int m, cd x) {
  if (m == 0) throw ThetaError("verify_bv_identity: omega must be nonzero");
  cd omega = 2.0 * kPi * I * static_cast<double>(m);
  Value v = E.hankel_transform(m, x);
  cd rhs = std::exp(omega * E.fatou()(x)) / omega;
  return {v.value, rhs, std::abs(v.value - rhs), v.error};
}

}  // namespace ptheta
