#include "cnoidal/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cnoidal/error.hpp"
#include "cnoidal/roots.hpp"

namespace cnoidal {

void require_term_count(int p) {
  if (p < 1 || p > 9 || p % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "term count p = " + std::to_string(p) + " must be odd and in [1, 9]");
  }
}

SuperposedWave::SuperposedWave(WaveKind kind, int p, Modulus m) : kind_(kind), p_(p), m_(m) {
  require_term_count(p);
}

SuperposedBasis::SuperposedBasis(Modulus m, int p) : jac_(m), p_(p), shift_(0.0) {
  require_term_count(p);
  if (m.is_hyperbolic()) {
    throw Error(ErrorKind::DegenerateModulus, "superposed waves need m < 1 (finite period)");
  }
  shift_ = 4.0 * jac_.quarter_period() / p;
}

SuperposedSample SuperposedBasis::operator()(double x) const {
  SuperposedSample out;
  for (int i = 0; i < p_; ++i) {
    const EllipticTriple t = jac_(x + i * shift_);
    out.s += t.sn;
    out.c += t.cn;
    out.d += t.dn;
    out.ds += t.cn * t.dn;
    out.dc -= t.sn * t.dn;
    out.dd -= t.sn * t.cn;
  }
  out.dd *= jac_.modulus().value();
  return out;
}

std::vector<EllipticTriple> SuperposedBasis::constituents(double x) const {
  std::vector<EllipticTriple> out;
  out.reserve(p_);
  for (int i = 0; i < p_; ++i) out.push_back(jac_(x + i * shift_));
  return out;
}

double superposed_eval(const SuperposedWave& w, double x) {
  const SuperposedSample s = SuperposedBasis(w.modulus(), w.terms())(x);
  switch (w.kind()) {
    case WaveKind::Sn: return s.s;
    case WaveKind::Cn: return s.c;
    case WaveKind::Dn: return s.d;
  }
  return 0.0;
}

double IdentityResiduals::max() const noexcept { return std::max({sd, cs, cd}); }

IdentityResiduals identity_residuals(Modulus m, int p, std::span<const double> xs) {
  if (p < 3) throw Error(ErrorKind::InvalidArgument, "cross-term identities need p >= 3");
  const SuperposedBasis basis(m, p);
  IdentityResiduals r;
  for (double x : xs) {
    const auto terms = basis.constituents(x);
    double sd = 0.0;
    double cs = 0.0;
    double cd = 0.0;
    for (int i = 0; i < p; ++i) {
      double others_s = 0.0;
      double others_d = 0.0;
      for (int j = 0; j < p; ++j) {
        if (j == i) continue;
        others_s += terms[j].sn;
        others_d += terms[j].dn;
      }
      sd += terms[i].sn * others_d;
      cs += terms[i].cn * others_s;
      cd += terms[i].cn * others_d;
    }
    r.sd = std::max(r.sd, std::abs(sd));
    r.cs = std::max(r.cs, std::abs(cs));
    r.cd = std::max(r.cd, std::abs(cd));
  }
  return r;
}

double landen_modulus_by_period(Modulus m, int p, double alpha) {
  const double target = alpha * complete_K(m) / p;
  const auto mismatch = [target](double mt) { return complete_K(Modulus(mt)) - target; };
  // K(0) = pi/2 <= target <= K(m) brackets the root; rounding can push the
  // target marginally below pi/2 when m~ underflows.
  if (mismatch(0.0) >= 0.0) return 0.0;
  return bisect(mismatch, 0.0, m.value(), 0.0);
}

LandenParams landen_params(Modulus m, int p) {
  require_term_count(p);
  if (m.is_hyperbolic()) {
    throw Error(ErrorKind::DivergentPeriod, "Landen parameters need m < 1");
  }
  const SuperposedBasis basis(m, p);
  const SuperposedSample origin = basis(0.0);
  LandenParams lp;
  lp.p = p;
  lp.m = m.value();
  lp.alpha = origin.d;
  lp.beta = origin.c;
  if (p == 1) {
    lp.mTilde = m.value();
  } else if (p == 3) {
    const double q = qtilde(m);
    const double den = (1.0 + q) * (1.0 + 2.0 * q);
    lp.qTildeVal = q;
    lp.mTilde = m.value() * (1.0 - q) * (1.0 - q) / (den * den);
  } else {
    lp.mTilde = landen_modulus_by_period(m, p, lp.alpha);
  }
  return lp;
}

double LandenResiduals::max() const noexcept { return std::max({dn, cn, sn}); }

LandenResiduals landen_residual(Modulus m, int p, std::span<const double> xs) {
  const LandenParams lp = landen_params(m, p);
  const SuperposedBasis basis(m, p);
  const JacobiEvaluator transformed{Modulus(lp.mTilde)};
  LandenResiduals r;
  for (double x : xs) {
    const SuperposedSample lhs = basis(x);
    const EllipticTriple t = transformed(lp.alpha * x);
    r.dn = std::max(r.dn, std::abs(lp.alpha * t.dn - lhs.d));
    r.cn = std::max(r.cn, std::abs(lp.beta * t.cn - lhs.c));
    r.sn = std::max(r.sn, std::abs(lp.beta * t.sn - lhs.s));
  }
  return r;
}

}  // namespace cnoidal
