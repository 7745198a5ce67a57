#include "ptheta/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptheta/special.hpp"

namespace ptheta {

cd segment_integral(const Integrand& F, cd z0, cd z1, int nodes) {
  const GaussRule& g = gauss_legendre(nodes);
  cd mid = 0.5 * (z0 + z1), half = 0.5 * (z1 - z0);
  cd acc = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) acc += g.w[i] * F(mid + half * g.x[i]);
  return acc * half;
}

namespace {

struct Leg {
  cd start;
  cd dir;
};

// Integral along start + dir*v, v in [0, L], with L extended until the integrand is negligible.
QuadResult leg_integral(const Integrand& F, const Leg& leg, double L, int nodes, const QuadConfig& cfg,
                        double scale) {
  QuadResult r{0.0, 0.0, 0.0, 0};
  bool adaptive = L <= 0.0;
  double end = adaptive ? cfg.max_length : L;
  double v = 0.0;
  double prev_mag = 0.0, peak = 0.0;
  int growing = 0;
  while (v < end) {
    double w = std::min(cfg.panel, end - v);
    cd a = leg.start + leg.dir * v, b = leg.start + leg.dir * (v + w);
    r.value += segment_integral(F, a, b, nodes);
    r.evaluations += nodes;
    v += w;
    if (adaptive) {
      double mag = std::abs(F(b));
      r.evaluations++;
      if (mag * cfg.panel < cfg.tail_tol * std::max(scale, std::abs(r.value))) break;
      peak = std::max(peak, mag);
      // A rise after a drop of many orders is the integrand's evaluation noise, not growth.
      if (mag > prev_mag && prev_mag < 1e-12 * peak && v > 4.0 * cfg.panel) {
        r.error += prev_mag * cfg.panel;
        break;
      }
      growing = (mag > prev_mag && v > 4.0 * cfg.panel) ? growing + 1 : 0;
      if (growing > 8) throw QuadratureError("contour leg: integrand does not decay");
      prev_mag = mag;
    }
  }
  if (adaptive && v >= end) throw QuadratureError("contour leg: truncation length cap reached");
  r.length = v;
  return r;
}

QuadResult hankel_once(const Integrand& F, const ContourSpec& spec, const QuadConfig& cfg, int nodes,
                       double L) {
  cd rot = std::polar(1.0, spec.direction);
  double r = spec.radius;
  QuadResult out{0.0, 0.0, 0.0, 0};
  // Arc w = r e^{i th}, th from pi/2 to 3pi/2, split in four panels.
  const GaussRule& g = gauss_legendre(nodes);
  for (int p = 0; p < 4; ++p) {
    double t0 = 0.5 * std::numbers::pi + p * 0.25 * std::numbers::pi;
    double t1 = t0 + 0.25 * std::numbers::pi;
    double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double th = mid + half * g.x[i];
      cd w = std::polar(r, th);
      cd dw = cd(0.0, 1.0) * w;
      out.value += g.w[i] * half * F(spec.anchor + rot * w) * rot * dw;
    }
    out.evaluations += nodes;
  }
  double scale = std::abs(out.value);
  // Incoming leg: w = v + i r from v = L to 0, i.e. minus the outward integral.
  Leg upper{spec.anchor + rot * cd(0.0, r), rot};
  Leg lower{spec.anchor + rot * cd(0.0, -r), rot};
  QuadResult a = leg_integral(F, upper, L, nodes, cfg, scale);
  QuadResult b = leg_integral(F, lower, L > 0 ? L : a.length, nodes, cfg, scale);
  out.value += b.value - a.value;
  out.error += a.error + b.error;
  out.evaluations += a.evaluations + b.evaluations;
  out.length = std::max(a.length, b.length);
  return out;
}

}  // namespace

QuadResult hankel_integral(const Integrand& F, const ContourSpec& spec, const QuadConfig& cfg) {
  int n = std::max(spec.nodes, 16);
  QuadResult r1 = hankel_once(F, spec, cfg, n, spec.length);
  long evals = r1.evaluations;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    QuadResult r2 = hankel_once(F, spec, cfg, 2 * n, r1.length * 1.2);
    evals += r2.evaluations;
    double err = std::abs(r2.value - r1.value);
    r2.error = err + r1.error;
    r2.evaluations = evals;
    if (err <= cfg.tol * std::max(1.0, std::abs(r2.value))) return r2;
    r1 = r2;
    n *= 2;
  }
  throw QuadratureError("hankel_integral: refinement cap reached");
}

QuadResult ray_integral(const Integrand& F, const ContourSpec& spec, const QuadConfig& cfg) {
  int n = std::max(spec.nodes, 16);
  Leg leg{spec.anchor, std::polar(1.0, spec.direction)};
  QuadResult r1 = leg_integral(F, leg, spec.length, n, cfg, 0.0);
  long evals = r1.evaluations;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    QuadResult r2 = leg_integral(F, leg, r1.length * 1.2, 2 * n, cfg, 0.0);
    evals += r2.evaluations;
    double tail = std::abs(F(leg.start + leg.dir * r2.length)) * cfg.panel;
    r2.error = std::abs(r2.value - r1.value) + tail;
    r2.evaluations = evals;
    if (r2.error <= cfg.tol * std::max(1.0, std::abs(r2.value))) return r2;
    r1 = r2;
    n *= 2;
  }
  throw QuadratureError("ray_integral: refinement cap reached");
}

cd circle_integral(const Integrand& F, cd center, double r, int nodes) {
  cd acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    cd d = std::polar(r, 2.0 * std::numbers::pi * j / nodes);
    acc += F(center + d) * d;
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace ptheta
