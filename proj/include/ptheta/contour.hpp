#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace ptheta {

using cd = std::complex<double>;
using Integrand = std::function<cd(cd)>;

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ContourKind { hankel, ray, line, circle };

struct ContourSpec {
  ContourKind kind = ContourKind::hankel;
  cd anchor = 0.0;
  double direction = 3.141592653589793;  // angle of the encircled ray / integration ray
  double radius = 0.3;                   // Hankel loop radius and leg offset
  double length = 0.0;                   // 0 = choose adaptively
  int nodes = 16;                        // Gauss-Legendre nodes per panel
};

struct QuadConfig {
  double tol = 1e-10;      // relative
  double tail_tol = 1e-12; // relative, integrand magnitude at the cut end
  double panel = 1.0;      // leg panel width
  double max_length = 4000.0;
  int max_doublings = 3;
};

struct QuadResult {
  cd value;
  double error;
  double length;
  long evaluations;
};

// Gauss-Legendre integral of F(z) dz along the straight segment z0 -> z1.
cd segment_integral(const Integrand& F, cd z0, cd z1, int nodes);

// Integral of F over the Hankel contour encircling anchor + e^{i dir} R_{>=0}
// counterclockwise (raw, no 1/(2 pi i)).
QuadResult hankel_integral(const Integrand& F, const ContourSpec& spec, const QuadConfig& cfg = {});

// Integral of F along anchor + e^{i dir} R_{>=0}.
QuadResult ray_integral(const Integrand& F, const ContourSpec& spec, const QuadConfig& cfg = {});

// (1/(2 pi i)) times the integral over the circle |s - center| = r, trapezoid rule.
cd circle_integral(const Integrand& F, cd center, double r, int nodes);

}  // namespace ptheta
