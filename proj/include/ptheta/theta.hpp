#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptheta/contour.hpp"
#include "ptheta/fatou.hpp"
#include "ptheta/germ.hpp"

namespace ptheta {

struct ThetaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Value {
  cd value;
  double error = 0.0;
};

struct ThetaParams {
  double alpha = 3.141592653589793;  // cut direction, cuts along omega + e^{i alpha} R_{>=0}
  double b = -0.5;                    // base of the strip lines in the psi-plane
  double h = 0.05;                    // trapezoid step along strip lines
  double U = 150.0;                   // initial half-length of strip lines
  double U_max = 2400.0;              // lines are doubled up to this until the ends are negligible
  double tilt = 0.5;                  // rotation of strip lines used next to a cut
  double direct_min = 0.05;           // smallest Re(s) for the direct sum
  double H1 = 1.0;                    // height of the jump-contour legs
  int leg_nodes = 20;                 // Gauss-Legendre nodes per unit panel on jump legs
  double hankel_radius = 0.3;
  double quad_tol = 1e-10;
  int max_crossings = 8;
};

struct Crossing {
  int m;     // the cut is at omega = 2 pi i m
  int dir;   // +1 crossing upward (from Im s < 2 pi m), -1 downward
};

struct SheetPoint {
  cd s;
  std::vector<Crossing> crossings;
};

std::string to_string(const SheetPoint& p);
SheetPoint parse_sheet_point(const std::string& text);

class ThetaEvaluator {
 public:
  ThetaEvaluator(const ParabolicGerm& f, cd x0, ThetaParams p = {}, FatouParams fp = {});

  const ParabolicGerm& germ() const { return E_.germ(); }
  const FatouEvaluator& fatou() const { return E_; }
  const ThetaParams& params() const { return p_; }
  cd x0() const { return E_.x0(); }
  cd t0() const { return E_.germ().t(E_.x0()); }

  Value direct(cd s) const;
  Value strip(cd s, int m) const { return strip(s, m, p_.alpha); }
  Value strip(cd s, int m, double alpha) const;
  // Strip index containing s for lines at angle alpha; throws if s is on a boundary.
  int strip_index(cd s, double alpha) const;
  // Principal-sheet value, choosing direct sum or a (possibly tilted) strip.
  Value main(cd s) const;
  Value jump(int m, cd s) const;
  Value continued(const SheetPoint& p) const;

  // (1/2 pi i) Hankel integral of Theta(s)/s e^{s t(x)} around omega + e^{i alpha} R_{>=0}.
  Value hankel_transform(int m, cd x) const;

  // Residue of Theta at 0 from the principal-sheet circle of radius r.
  Value residue_at_zero(double r) const;
  // Sum of the branch-cut contributions c_mu r^mu / Gamma(mu+1) removed by residue_at_zero.
  cd cut_correction(double r) const;

 private:
  struct Line {
    std::vector<cd> psi;
    std::vector<cd> T;
    cd dpsi;
    std::map<int, std::vector<cd>> weights;  // log(B_m(psi_j) h dpsi) per strip index
  };
  struct March {
    std::vector<cd> T;     // t-values on unit panels moving left, panel-major
    std::vector<cd> last;  // x at the current leftmost panel
    int panels = 0;
  };

  const Line& line(double alpha, int n) const;  // 2n+1 points, half-length n h
  const std::vector<cd>& line_weights(const Line& L, int m) const;
  const March& march(int sign, int panels) const;
  cd orbit_t(std::size_t n) const;
  Value main_uncached(cd s) const;
  // Same quantities times e^{s t0}, which stays bounded for Re s -> -infinity.
  Value direct_scaled(cd s) const;
  Value strip_scaled(cd s, int m, double alpha) const;
  Value main_scaled(cd s) const;
  Value scale_back(Value v, cd s) const;

  FatouEvaluator E_;
  ThetaParams p_;
  mutable std::recursive_mutex mu_;
  mutable std::vector<cd> orbit_t_;
  mutable cd orbit_x_;
  mutable std::map<std::pair<double, int>, std::unique_ptr<Line>> lines_;
  mutable March march_up_, march_dn_;
  mutable std::vector<cd> vert_psi_, vert_T_, vert_w_;
  mutable std::unordered_map<std::string, Value> memo_;
};

Value theta_direct(const ThetaEvaluator& E, cd s);
Value theta_strip(const ThetaEvaluator& E, cd s, int m);
Value theta_jump(const ThetaEvaluator& E, int m, cd s);
Value theta_continue(const ThetaEvaluator& E, const SheetPoint& p);

struct Recovery {
  cd value;        // (1/2 pi i) Hankel transform
  double error;
  cd fatou;        // sectorial_fatou at x
  cd offset;       // value - fatou
};
Recovery recover_fatou(const ThetaEvaluator& E, cd x);

struct BVCheck {
  cd lhs;
  cd rhs;
  double defect;
  double error;
};
BVCheck verify_bv_identity(const ThetaEvaluator& E, int m, cd x);

}  // namespace ptheta
