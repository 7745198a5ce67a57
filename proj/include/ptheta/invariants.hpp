#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ptheta/fatou.hpp"
#include "ptheta/theta.hpp"

namespace ptheta {

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transition j = 2p+1 lies on the Im t > 0 side of attracting petal p (0-based), j = 2p+2 on
// the Im t < 0 side. Entries use omega = 2 pi i m with m > 0 for odd j and m < 0 for even j.
struct EVEntry {
  int j;
  int m;
  cd A;
  double error = 0.0;
  bool below_floor = false;
};

struct EVModulus {
  std::vector<EVEntry> entries;
  cd normalization = 0.0;  // base-point constant C of the coordinates used
  std::string method;      // "horn" or "theta"

  const EVEntry* find(int j, int m) const;
};

int transition_side(int j);  // +1 or -1
int transition_petal(int j);

// Horn map A_j(t) = psi_minus(psi_plus^{-1}(t)) between the raw attracting and repelling coordinates.
cd horn_map(const FatouEvaluator& E, int j, cd t);

struct FourierParams {
  int modes = 1;
  double H = 2.0;
  int samples = 64;
  double re0 = 30.0;         // real part of the sampling window (sign flipped for even j)
  double fourier_tol = 1e-6;  // H-ladder agreement
  double noise = 1e-15;       // relative accuracy of the horn map
};

EVModulus fourier_coefficients(const FatouEvaluator& E, int j, const FourierParams& p = {});

struct ThetaFitParams {
  double r_min = 0.15;
  double r_max = 0.5;
  int radii = 8;
  int angles = 12;
  double angle_margin = 0.25;
  int singular_terms = 6;  // (s - omega)^{beta + j/k}, j < singular_terms
  int analytic_terms = 7;  // (s - omega)^j
};

struct ThetaInvariant {
  cd A;           // A'_omega
  cd leading;     // coefficient of (s - omega)^beta in the jump at 0
  cd beta;
  double error;
};

// A'_omega read off the singularity of theta_jump(0, .) at omega = 2 pi i m.
ThetaInvariant invariant_from_theta(const ThetaEvaluator& E, int m, const ThetaFitParams& p = {});

enum class Equivalence { equivalent, inequivalent, indeterminate };

struct EquivalenceResult {
  Equivalence verdict;
  std::optional<cd> C;
  double defect = 0.0;
};

// Looks for C with A2 = A1 e^{omega C} on every common entry.
EquivalenceResult cocycles_equivalent(const EVModulus& M1, const EVModulus& M2, double tol,
                                      double floor = 1e-9);

EVModulus rescale(const EVModulus& M, cd C);

const char* to_string(Equivalence e);

}  // namespace ptheta
