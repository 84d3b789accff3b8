#include "cnoidal/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cnoidal/error.hpp"

namespace cnoidal {

XGrid default_grid(const SolutionCoefficients& c, int points) {
  return {0.0, 3.0 * fundamental_period(c), points};
}

AnsatzEvaluator::AnsatzEvaluator(const SolutionCoefficients& c)
    : c_(c), basis_(Modulus(c.m), c.p) {}

AnsatzPoint AnsatzEvaluator::operator()(double X) const {
  AnsatzPoint pt;
  pt.X = X;
  pt.wave = basis_(X);
  const SuperposedSample& w = pt.wave;
  // (upper, lower) = (dn-type, cn-type) waves for UpperDn, swapped otherwise.
  const bool upper_dn = layout_of(c_.family) == Layout::UpperDn;
  const double up = upper_dn ? w.d : w.c;
  const double dup = upper_dn ? w.dd : w.dc;
  const double lo = upper_dn ? w.c : w.d;
  const double dlo = upper_dn ? w.dc : w.dd;

  pt.C = {c_.b_i * w.s, c_.b_e * up, c_.b_f * lo, c_.b_v * up};
  pt.dC = {c_.b_i * w.ds, c_.b_e * dup, c_.b_f * dlo, c_.b_v * dup};
  pt.Omega = {c_.A_e * lo, c_.A_f * w.s, c_.A_v * lo};
  pt.dOmega = {c_.A_e * dlo, c_.A_f * w.ds, c_.A_v * dlo};
  return pt;
}

Profile build_profile(const SolutionCoefficients& c, const XGrid& grid) {
  if (grid.n < 2) throw Error(ErrorKind::InvalidArgument, "profile grid needs n >= 2");
  const AnsatzEvaluator eval(c);
  Profile p;
  p.coeffs = c;
  p.hasV = has_v_level(c.family);
  const auto n = static_cast<std::size_t>(grid.n);
  p.xs.reserve(n);
  for (auto* v : {&p.Ci, &p.Ce, &p.Cf, &p.OmegaE, &p.OmegaF}) v->reserve(n);
  if (p.hasV) {
    p.Cv.reserve(n);
    p.OmegaV.reserve(n);
  }
  for (int k = 0; k < grid.n; ++k) {
    const AnsatzPoint pt = eval(grid.at(k));
    p.xs.push_back(pt.X);
    p.Ci.push_back(pt.C.i);
    p.Ce.push_back(pt.C.e);
    p.Cf.push_back(pt.C.f);
    p.OmegaE.push_back(pt.Omega.e);
    p.OmegaF.push_back(pt.Omega.f);
    if (p.hasV) {
      p.Cv.push_back(pt.C.v);
      p.OmegaV.push_back(pt.Omega.v);
    }
    p.waveS.push_back(pt.wave.s);
    p.waveC.push_back(pt.wave.c);
    p.waveD.push_back(pt.wave.d);
  }
  return p;
}

double probability_deviation(const Profile& p) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.xs.size(); ++k) {
    double total = std::norm(p.Ci[k]) + std::norm(p.Ce[k]) + std::norm(p.Cf[k]);
    if (p.hasV) total += std::norm(p.Cv[k]);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

double ResidualReport::max_raw() const noexcept {
  double r = 0.0;
  for (const auto& e : perEquation) r = std::max(r, e.raw);
  return r;
}

double ResidualReport::max_relative() const noexcept {
  double r = 0.0;
  for (const auto& e : perEquation) r = std::max(r, e.relative);
  return r;
}

ResidualReport residual_from_samples(std::span<const AnsatzPoint> samples, double q,
                                     double Gamma, const CouplingConstants& mu, bool hasV,
                                     double spacing) {
  const complex I{0.0, 1.0};
  ResidualReport rep;
  rep.stencilSpacing = spacing;
  rep.perEquation = {{"schrodinger_e"}, {"schrodinger_i"}, {"schrodinger_f"}};
  if (hasV) rep.perEquation.push_back({"schrodinger_v"});
  rep.perEquation.push_back({"maxwell_f"});
  rep.perEquation.push_back({"maxwell_e"});
  if (hasV) rep.perEquation.push_back({"maxwell_v"});
  rep.pointwise.reserve(samples.size());

  for (const AnsatzPoint& s : samples) {
    const Amplitudes& C = s.C;
    const Amplitudes& dC = s.dC;
    const Rabi& W = s.Omega;
    const Rabi& dW = s.dOmega;
    // i dC/dtau = -I dC/dX * Gamma ; dOmega/dzeta = q dOmega/dX.
    complex res[7];
    int n = 0;
    res[n++] = -I * Gamma * dC.e + 0.5 * (W.f * C.f + W.e * C.i);
    res[n++] = -I * Gamma * dC.i + 0.5 * (std::conj(W.e) * C.e + std::conj(W.v) * C.v);
    res[n++] = -I * Gamma * dC.f + 0.5 * std::conj(W.f) * C.e;
    if (hasV) res[n++] = -I * Gamma * dC.v + 0.5 * W.v * C.i;
    res[n++] = q * dW.f - I * mu.f * C.e * std::conj(C.f);
    res[n++] = q * dW.e - I * mu.e * C.e * std::conj(C.i);
    if (hasV) res[n++] = q * dW.v - I * mu.v * C.v * std::conj(C.i);

    double point_max = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = std::abs(res[k]);
      rep.perEquation[k].raw = std::max(rep.perEquation[k].raw, a);
      point_max = std::max(point_max, a);
    }
    rep.pointwise.push_back(point_max);

    const double omega_max = std::max({std::abs(W.e), std::abs(W.f), std::abs(W.v)});
    const double c_max = std::max({std::abs(C.i), std::abs(C.e), std::abs(C.f), std::abs(C.v)});
    rep.relativeScale = std::max(rep.relativeScale, omega_max * c_max);
  }
  for (auto& e : rep.perEquation) {
    if (e.raw == 0.0) {
      e.relative = 0.0;
    } else {
      e.relative = rep.relativeScale > 0.0 ? e.raw / rep.relativeScale : HUGE_VAL;
    }
  }
  return rep;
}

ResidualReport ode_residual(const SolutionCoefficients& c, const XGrid& grid) {
  const AnsatzEvaluator eval(c);
  std::vector<AnsatzPoint> samples;
  samples.reserve(static_cast<std::size_t>(grid.n));
  for (int k = 0; k < grid.n; ++k) samples.push_back(eval(grid.at(k)));
  return residual_from_samples(samples, c.q, c.Gamma, couplings(c), has_v_level(c.family),
                               grid.spacing());
}

AmplitudeContrast amplitude_contrast(const Profile& p) {
  const auto peak = [](const std::vector<double>& v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
  };
  const double d = peak(p.waveD);
  const double c = peak(p.waveC);
  const double s = peak(p.waveS);
  if (c == 0.0 || s == 0.0) {
    throw Error(ErrorKind::UndefinedRatio, "a denominator wave vanishes on the whole grid");
  }
  return {d / c, d / s};
}

Certificate certificate(const SolutionCoefficients& c, int points) {
  const XGrid grid = default_grid(c, points);
  Certificate cert;
  cert.residual = ode_residual(c, grid);
  cert.probabilityDeviation = probability_deviation(build_profile(c, grid));
  return cert;
}

Certificate certify(const SolutionCoefficients& c, int points) {
  Certificate cert = certificate(c, points);
  if (!cert.passed()) {
    throw Error(ErrorKind::Uncertified,
                std::string(to_string(c.family)) +
                    ": residual=" + std::to_string(cert.residual.max_relative()) +
                    " probability deviation=" + std::to_string(cert.probabilityDeviation));
  }
  return cert;
}

}  // namespace cnoidal
