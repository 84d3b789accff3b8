#include "cnoidal/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cnoidal/error.hpp"
#include "cnoidal/roots.hpp"

namespace cnoidal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Modulus::Modulus(double m) : m_(m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorKind::InvalidModulus, "m = " + std::to_string(m) + " outside [0, 1]");
  }
}

double complete_K(Modulus m) {
  if (m.is_hyperbolic()) {
    throw Error(ErrorKind::DivergentPeriod, "K(m) diverges at m = 1");
  }
  double a = 1.0;
  double b = std::sqrt(m.complement());
  for (int i = 0; i < 32 && std::abs(a - b) > kEps * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (a + b);
}

JacobiEvaluator::JacobiEvaluator(Modulus m) : m_(m), bigK_(0.0) {
  if (m.is_hyperbolic()) {
    bigK_ = std::numeric_limits<double>::infinity();
    return;
  }
  a_[0] = 1.0;
  c_[0] = std::sqrt(m.value());
  double b = std::sqrt(m.complement());
  int n = 0;
  while (n < kMaxIterations && std::abs(c_[n]) > kEps * a_[n]) {
    a_[n + 1] = 0.5 * (a_[n] + b);
    // c_{n+1} = (a_n - b_n)/2 rewritten without the cancellation.
    c_[n + 1] = 0.25 * c_[n] * c_[n] / a_[n + 1];
    b = std::sqrt(a_[n] * b);
    ++n;
  }
  depth_ = n;
  bigK_ = std::numbers::pi / (2.0 * a_[n]);
}

EllipticTriple JacobiEvaluator::operator()(double x) const {
  EllipticTriple t;
  t.x = x;
  t.m = m_.value();
  t.bigK = bigK_;
  if (m_.is_trigonometric()) {
    t.sn = std::sin(x);
    t.cn = std::cos(x);
    t.dn = 1.0;
    return t;
  }
  if (m_.is_hyperbolic()) {
    t.sn = std::tanh(x);
    t.cn = 1.0 / std::cosh(x);
    t.dn = t.cn;
    return t;
  }
  double phi = std::ldexp(a_[depth_] * x, depth_);
  for (int n = depth_; n > 0; --n) {
    phi = 0.5 * (phi + std::asin(c_[n] * std::sin(phi) / a_[n]));
  }
  t.sn = std::sin(phi);
  t.cn = std::cos(phi);
  // dn^2 = cn^2 + (1-m) sn^2 has no cancellation even as m -> 1.
  t.dn = std::sqrt(t.cn * t.cn + m_.complement() * t.sn * t.sn);
  return t;
}

EllipticTriple jacobi(double x, Modulus m) { return JacobiEvaluator(m)(x); }

double qtilde(Modulus m) {
  if (m.is_hyperbolic()) return 0.0;
  const JacobiEvaluator jac(m);
  return jac(2.0 * jac.quarter_period() / 3.0).dn;
}

double qtilde_quartic_root(Modulus m) {
  const double m1 = m.complement();
  const auto quartic = [m1](double q) {
    return ((q + 2.0) * q * q - 2.0 * m1) * q - m1;
  };
  return bisect(quartic, 0.0, 1.0, 1e-14);
}

}  // namespace cnoidal
