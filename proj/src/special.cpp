#include "ptheta/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ptheta {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,  12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cd lanczos_gamma(cd z) {
  z -= 1.0;
  cd x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cd t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

bool nonpositive_integer(cd z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cd gamma(cd z) {
  if (nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.real() < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
  return lanczos_gamma(z);
}

cd rgamma(cd z) {
  if (nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z) / std::numbers::pi;
  return 1.0 / lanczos_gamma(z);
}

cd expint_e1(cd z) {
  constexpr double euler = 0.57721566490153286061;
  if (std::abs(z) <= 4.0 || z.real() < 0.0) {
    cd sum = 0.0, term = 1.0;
    for (int l = 1; l < 400; ++l) {
      term *= -z / static_cast<double>(l);
      cd add = term / static_cast<double>(l);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return -euler - std::log(z) - sum;
  }
  // Continued fraction, modified Lentz.
  const double tiny = 1e-300;
  cd b = z + 1.0;
  cd c = 1.0 / tiny;
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 1; i < 1000; ++i) {
    double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    cd del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = -x;
    r.x[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace ptheta
