#pragma once

#include <complex>
#include <vector>

namespace ptheta {

using cd = std::complex<double>;

cd gamma(cd z);
cd rgamma(cd z);  // 1/Gamma(z), entire
cd expint_e1(cd z);

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Cached per n; safe to call concurrently after first use of a given n.
const GaussRule& gauss_legendre(int n);

}  // namespace ptheta
