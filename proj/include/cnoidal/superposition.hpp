#pragma once

// Superposed cnoidal waves
//
//   S~(x) = sum_{i=1..p} sn(x + 4(i-1)K/p, m)
//
// and the analogous C~ (cn) and D~ (dn), for odd p.  For odd p the cross
// terms in the products S~C~, S~D~ and C~D~ cancel, so the superposed waves
// obey the same derivative relations as sn, cn and dn themselves.  Each
// superposed wave is also a single elliptic function at a transformed
// modulus m~ (generalized Landen transformation):
//
//   D~(x) = alpha dn(alpha x, m~),  C~(x) = beta cn(alpha x, m~),
//   S~(x) = beta sn(alpha x, m~).

#include <optional>
#include <span>
#include <vector>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

enum class WaveKind { Sn, Cn, Dn };

/// Descriptor of a superposed wave.  p must be one of 1, 3, 5, 7, 9.
class SuperposedWave {
public:
  SuperposedWave(WaveKind kind, int p, Modulus m);

  WaveKind kind() const noexcept { return kind_; }
  int terms() const noexcept { return p_; }
  Modulus modulus() const noexcept { return m_; }

private:
  WaveKind kind_;
  int p_;
  Modulus m_;
};

/// Throws InvalidArgument unless p is odd and 1 <= p <= 9.
void require_term_count(int p);

/// All three superposed waves at one point, plus the term-wise derivative
/// sums (S~' = sum cn_i dn_i, C~' = -sum sn_i dn_i, D~' = -m sum sn_i cn_i).
/// The derivative sums never use the cross-term identities.
struct SuperposedSample {
  double s = 0.0;
  double c = 0.0;
  double d = 0.0;
  double ds = 0.0;
  double dc = 0.0;
  double dd = 0.0;
};

class SuperposedBasis {
public:
  SuperposedBasis(Modulus m, int p);

  SuperposedSample operator()(double x) const;
  /// The p shifted constituents at x, in index order.
  std::vector<EllipticTriple> constituents(double x) const;

  int terms() const noexcept { return p_; }
  Modulus modulus() const noexcept { return jac_.modulus(); }
  double quarter_period() const noexcept { return jac_.quarter_period(); }
  /// Shift 4K/p between consecutive terms.
  double shift() const noexcept { return shift_; }
  /// Period of S~ and C~ in x (4K/p); D~ repeats after half of it.
  double period() const noexcept { return shift_; }

private:
  JacobiEvaluator jac_;
  int p_;
  double shift_;
};

double superposed_eval(const SuperposedWave& w, double x);

struct IdentityResiduals {
  double sd = 0.0;  ///< max |sum_i s_i sum_{j!=i} d_j|
  double cs = 0.0;  ///< max |sum_i c_i sum_{j!=i} s_j|
  double cd = 0.0;  ///< max |sum_i c_i sum_{j!=i} d_j|

  double max() const noexcept;
};

/// Maxima over xs of the three cyclic cross-term sums.  Requires p >= 3, m < 1.
IdentityResiduals identity_residuals(Modulus m, int p, std::span<const double> xs);

struct LandenParams {
  int p = 1;
  double m = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double mTilde = 0.0;
  /// q~ = dn(2K/3, m) entering the closed-form m~; only set for p = 3.
  std::optional<double> qTildeVal;
};

/// alpha = sum dn(4(i-1)K/p), beta = sum cn(4(i-1)K/p).  For p = 3 the
/// transformed modulus is m (1-q)^2 / ((1+q)^2 (1+2q)^2); otherwise it is
/// fixed by matching periods, K(m~) = alpha K(m) / p.
LandenParams landen_params(Modulus m, int p);

/// Transformed modulus from period matching, for any odd p.
double landen_modulus_by_period(Modulus m, int p, double alpha);

struct LandenResiduals {
  double dn = 0.0;
  double cn = 0.0;
  double sn = 0.0;

  double max() const noexcept;
};

/// Maxima over xs of |alpha dn(alpha x, m~) - D~(x)| and the cn/sn analogues.
LandenResiduals landen_residual(Modulus m, int p, std::span<const double> xs);

}  // namespace cnoidal
