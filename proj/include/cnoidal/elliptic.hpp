#pragma once

// Jacobi elliptic functions sn, cn, dn and the complete elliptic integral
// K(m), evaluated with the arithmetic-geometric mean.  All arguments are the
// elliptic argument u (never the amplitude phi) and m is the parameter
// (m = k^2).

#include <array>

namespace cnoidal {

/// Elliptic parameter m, restricted to [0, 1].
class Modulus {
public:
  explicit Modulus(double m);

  double value() const noexcept { return m_; }
  /// Complementary parameter 1 - m.
  double complement() const noexcept { return 1.0 - m_; }
  bool is_trigonometric() const noexcept { return m_ == 0.0; }
  bool is_hyperbolic() const noexcept { return m_ == 1.0; }

private:
  double m_;
};

struct EllipticTriple {
  double x = 0.0;
  double m = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  /// Quarter period K(m); +inf when m = 1.
  double bigK = 0.0;
};

/// K(m) for 0 <= m < 1.  Throws DivergentPeriod at m = 1.
double complete_K(Modulus m);

/// sn, cn, dn at a single point.  Exact closed forms at m = 0 and m = 1.
EllipticTriple jacobi(double x, Modulus m);

/// Reusable evaluator: the AGM ladder depends only on m, so it is built once
/// and shared by every point evaluated at that modulus.
class JacobiEvaluator {
public:
  explicit JacobiEvaluator(Modulus m);

  EllipticTriple operator()(double x) const;
  double quarter_period() const noexcept { return bigK_; }
  Modulus modulus() const noexcept { return m_; }

private:
  static constexpr int kMaxIterations = 32;

  Modulus m_;
  double bigK_;
  int depth_ = 0;
  std::array<double, kMaxIterations + 1> a_{};
  std::array<double, kMaxIterations + 1> c_{};
};

/// q~ = dn(2K/3, m); limit 0 at m = 1.
double qtilde(Modulus m);

/// Root in [0, 1] of q^4 + 2 q^3 - 2(1-m) q - (1-m) = 0, found by bisection.
double qtilde_quartic_root(Modulus m);

}  // namespace cnoidal
