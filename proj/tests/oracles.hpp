#pragma once

// Reference computations that share no code with the library: Gauss-Kronrod
// quadrature for K, Boost's Jacobi functions, a least-squares fit for the conservation
// fraction and finite-difference residuals.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)
inline double K_quadrature(double m) {
  const auto f = [m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 0.5 * std::numbers::pi, 12,
                                                                        1e-14);
}

struct Triple {
  double sn, cn, dn;
};

// Boost's dn drifts by ~1e-4 near sn = +-1 (seen with 1.74), so dn comes from
// sn, which it gets right.
inline Triple jacobi(double u, double m) {
  double cn = 0.0, dn = 0.0;
  const double sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn, &dn);
  return {sn, cn, std::sqrt(1.0 - m * sn * sn)};
}

/// Raw superposed sums with K from quadrature.
inline Triple superposed(double u, double m, int p) {
  const double shift = 4.0 * K_quadrature(m) / p;
  Triple s{0, 0, 0};
  for (int i = 0; i < p; ++i) {
    const Triple t = jacobi(u + i * shift, m);
    s.sn += t.sn;
    s.cn += t.cn;
    s.dn += t.dn;
  }
  return s;
}

/// x such that S~^2 + ((1-x)/m) D~^2 + x C~^2 = 1, averaged over one period.
/// This is the Lambda superposed norm with |b_f|^2 = x and |b_e|^2 = (1 - x)/m.
/// spread reports how far the two pieces are from constant.
struct Fraction {
  double x, spread;
};

inline Fraction fraction_by_normalization(double m, int p = 3, int samples = 400) {
  const double span = 4.0 * K_quadrature(m) / p;
  double ma = 0, mg = 0, lo = HUGE_VAL, hi = -HUGE_VAL;
  std::vector<double> a(samples), g(samples);
  for (int k = 0; k < samples; ++k) {
    const Triple s = superposed(span * k / samples, m, p);
    a[k] = s.sn * s.sn + s.dn * s.dn / m;
    g[k] = s.cn * s.cn - s.dn * s.dn / m;
    ma += a[k];
    mg += g[k];
  }
  ma /= samples;
  mg /= samples;
  const double x = (1.0 - ma) / mg;
  for (int k = 0; k < samples; ++k) {
    lo = std::min(lo, a[k] + x * g[k]);
    hi = std::max(hi, a[k] + x * g[k]);
  }
  return {x, hi - lo};
}

/// Central difference of a complex function.
inline std::complex<double> derivative(const std::function<std::complex<double>(double)>& f,
                                       double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
