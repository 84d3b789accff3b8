#include "cnoidal/constraints.hpp"

#include <cmath>
#include <string>

#include "cnoidal/error.hpp"
#include "cnoidal/profile.hpp"
#include "cnoidal/roots.hpp"
#include "cnoidal/superposition.hpp"

namespace cnoidal {

namespace {

// Inversions of x(m) are bracketed away from the endpoints, where the map is
// a 0/0 limit (m -> 1) or the modulus leaves the pulse-train range (m -> 0).
constexpr double kMLow = 1e-12;
constexpr double kMHigh = 1.0 - 1e-12;
constexpr int kTabulationPoints = 512;

const complex I{0.0, 1.0};

void require_pulse_train(Modulus m) {
  if (!(m.value() > 0.0 && m.value() < 1.0)) {
    throw Error(ErrorKind::DegenerateModulus,
                "pulse trains need 0 < m < 1, got m = " + std::to_string(m.value()));
  }
}

void require_positive_gamma(double Gamma) {
  if (!(std::isfinite(Gamma) && Gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Gamma must be finite and > 0");
  }
}

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

void require_ordering(const MediumSpec& md) {
  const double mu_v = md.require_mu_v();
  if (!(md.mu_f >= md.mu_e && md.mu_e >= mu_v)) {
    throw Error(ErrorKind::OrderingViolation, "need mu_f >= mu_e >= mu_v");
  }
}

SolutionCoefficients certified(SolutionCoefficients c, const SolveOptions& opts) {
  certify(c, opts.certifyPoints);
  return c;
}

}  // namespace

double fraction_x_of_m(Modulus m) {
  require_pulse_train(m);
  const double mv = m.value();
  const double q = qtilde(m);
  const double q1 = (q + 1.0) * (q + 1.0);
  const double base = 1.0 / mv - 1.0;
  const double num = base + (4.0 / mv) * (q * q + q);
  const double den = base + (2.0 / mv) * (q1 - mv / q1);
  return num / den;
}

double fraction_x_of_m(Modulus m, int p) {
  if (p == 3) return fraction_x_of_m(m);
  require_pulse_train(m);
  const LandenParams lp = landen_params(m, p);
  return (1.0 - m.value() / (lp.alpha * lp.alpha)) / (1.0 - lp.mTilde);
}

Modulus m_of_fraction_x(double x, const SolveOptions& opts) { return m_of_fraction_x(x, 3, opts); }

Modulus m_of_fraction_x(double x, int p, const SolveOptions& opts) {
  require_term_count(p);
  const auto f = [p](double m) { return fraction_x_of_m(Modulus(m), p); };
  const double x_hi = f(kMLow);
  const double x_lo = f(kMHigh);
  if (!(x > x_lo && x < x_hi)) {
    throw Error(ErrorKind::InfeasibleFraction,
                "x = " + std::to_string(x) + " outside the feasible window (" +
                    std::to_string(x_lo) + ", 1)");
  }
  if (!is_strictly_monotone(f, kMLow, kMHigh, kTabulationPoints, Monotonicity::Decreasing)) {
    throw Error(ErrorKind::NotMonotone, "x(m) is not monotone on the tabulation");
  }
  return Modulus(bisect([&](double m) { return f(m) - x; }, kMLow, kMHigh, opts.rootTolerance));
}

FeasibilityWindow feasibility_window() {
  const auto f = [](double m) { return fraction_x_of_m(Modulus(m)); };
  constexpr int kGrid = 10000;
  FeasibilityWindow w;
  int best = 1;
  double best_x = f(1.0 / kGrid);
  double prev = best_x;
  w.monotone = true;
  for (int k = 2; k < kGrid; ++k) {
    const double x = f(static_cast<double>(k) / kGrid);
    if (!(x < prev)) w.monotone = false;
    prev = x;
    if (x < best_x) {
      best_x = x;
      best = k;
    }
  }
  const double lo = static_cast<double>(best - 1) / kGrid;
  const double hi = std::min(static_cast<double>(best + 1) / kGrid, kMHigh);
  const Minimum refined = golden_section_min(f, lo, hi, 1e-15);
  w.xMin = std::min(refined.value, best_x);
  w.mAtMin = refined.value < best_x ? refined.arg : static_cast<double>(best) / kGrid;
  w.xMax = 1.0;
  return w;
}

SolutionCoefficients lambda_superposed_coefficients(Modulus m, double Gamma,
                                                    const MediumSpec& medium, double mu, int p,
                                                    Variant variant) {
  require_pulse_train(m);
  require_positive_gamma(Gamma);
  require_term_count(p);
  const double mv = m.value();
  const double mu_e = medium.mu_e;
  if (!(mu > 0.0 && mu <= mu_e)) {
    throw Error(ErrorKind::InvalidRatio, "positivity needs 0 < mu <= mu_e");
  }
  SolutionCoefficients c;
  c.p = p;
  c.m = mv;
  c.Gamma = Gamma;
  c.mu = mu;
  c.medium = medium;
  c.q = mu / (2.0 * Gamma * mv);
  const double G2 = 4.0 * Gamma * Gamma;
  c.A_f = std::sqrt(G2 * mv * (mu_e / mu - 1.0));
  if (variant == Variant::Standard) {
    c.family = Family::LambdaSuperposed;
    c.A_e = std::sqrt(G2 * mv * mu_e / mu);
    c.b_e = I * c.q * c.A_e / mu_e;
    c.b_f = -std::conj(c.A_f) / std::conj(c.A_e);
  } else {
    c.family = Family::LambdaSuperposedExchanged;
    c.A_e = std::sqrt(G2 * mu_e / mu);
    c.b_e = I * c.q * mv * c.A_e / mu_e;
    c.b_f = -std::conj(c.A_f) / (mv * std::conj(c.A_e));
  }
  return c;
}

SolutionCoefficients solve_lambda_superposed(Modulus m, double Gamma, const MediumSpec& medium,
                                             int p, Variant variant, const SolveOptions& opts) {
  medium.validate();
  if (medium.scheme != Scheme::Lambda) {
    throw Error(ErrorKind::SchemeMismatch, "Lambda solution needs a Lambda medium");
  }
  if (!nearly_equal(medium.mu_e, medium.mu_f)) {
    throw Error(ErrorKind::SchemeMismatch, "superposed Lambda trains need mu_e = mu_f");
  }
  require_pulse_train(m);
  const double x = fraction_x_of_m(m, p);
  // Standard layout: |b_f|^2 = x = 1 - mu/mu_e.  Exchanged: |b_e|^2 = mu/mu_e = x.
  const double ratio = variant == Variant::Standard ? 1.0 - x : x;
  return certified(
      lambda_superposed_coefficients(m, Gamma, medium, ratio * medium.mu_e, p, variant), opts);
}

namespace {

void require_ratio(double muRatio) {
  if (!(muRatio > 0.0 && muRatio <= 1.0)) {
    throw Error(ErrorKind::InvalidRatio,
                "mu/mu_e = " + std::to_string(muRatio) + " outside (0, 1]");
  }
}

}  // namespace

double lambda_p1_occupancy(Modulus m, double muRatio, Variant variant) {
  require_pulse_train(m);
  require_ratio(muRatio);
  const double mv = m.value();
  const double inv = variant == Variant::Standard ? muRatio * (1.0 / mv - 1.0) + 1.0
                                                  : (1.0 - muRatio) / mv + muRatio;
  return 1.0 / std::sqrt(inv);
}

Modulus lambda_p1_modulus(double b_i, double muRatio, Variant variant) {
  require_ratio(muRatio);
  const double b2 = b_i * b_i;
  if (!(b2 > 0.0 && b2 <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "need 0 < |b_i| <= 1");
  }
  if (b2 == 1.0) {
    throw Error(ErrorKind::PulseLimit, "|b_i| = 1 forces m = 1: localized pulse, no train");
  }
  const double excess = 1.0 / b2 - 1.0;
  const double m = variant == Variant::Standard ? muRatio / (muRatio + excess)
                                                : (1.0 - muRatio) / (1.0 - muRatio + excess);
  return Modulus(m);
}

double lambda_chain_occupancy(Modulus m) {
  return lambda_p1_occupancy(m, 1.0 - fraction_x_of_m(m), Variant::Standard);
}

SolutionCoefficients solve_lambda_p1(Modulus m, double Gamma, double muRatio,
                                     const MediumSpec& medium, Variant variant,
                                     const SolveOptions& opts) {
  medium.validate();
  if (medium.scheme != Scheme::Lambda) {
    throw Error(ErrorKind::SchemeMismatch, "Lambda solution needs a Lambda medium");
  }
  if (!nearly_equal(medium.mu_e, medium.mu_f)) {
    throw Error(ErrorKind::SchemeMismatch, "Lambda trains need mu_e = mu_f");
  }
  require_positive_gamma(Gamma);
  const double bi = lambda_p1_occupancy(m, muRatio, variant);
  const double mv = m.value();
  const double mu_e = medium.mu_e;
  const double G2 = 4.0 * Gamma * Gamma;

  SolutionCoefficients c;
  c.p = 1;
  c.m = mv;
  c.Gamma = Gamma;
  c.medium = medium;
  c.mu = muRatio * mu_e;
  c.b_i = bi;
  c.q = c.mu * bi * bi / (2.0 * Gamma * mv);
  c.A_f = std::sqrt(G2 * mv * (1.0 / muRatio - 1.0));
  if (variant == Variant::Standard) {
    c.family = Family::LambdaP1;
    c.A_e = std::sqrt(G2 * mv / muRatio);
    c.b_e = 2.0 * I * Gamma * c.b_i / std::conj(c.A_e);
    c.b_f = -std::conj(c.A_f) * c.b_i / std::conj(c.A_e);
  } else {
    c.family = Family::LambdaP1Exchanged;
    c.A_e = std::sqrt(G2 / muRatio);
    c.b_e = 2.0 * I * Gamma * c.b_i / std::conj(c.A_e);
    c.b_f = -std::conj(c.A_f) * c.b_i / (mv * std::conj(c.A_e));
  }
  return certified(c, opts);
}

SolutionCoefficients solve_n_superposed(double Gamma, const MediumSpec& medium, int p,
                                        Variant variant, const SolveOptions& opts) {
  medium.validate();
  if (medium.scheme == Scheme::TwoLevel || medium.scheme == Scheme::V) {
    throw Error(ErrorKind::DegenerateScheme,
                "superposed trains do not exist in two-level or V media (see check_impossibility)");
  }
  if (medium.scheme != Scheme::N) {
    throw Error(ErrorKind::SchemeMismatch, "N solution needs an N medium");
  }
  require_positive_gamma(Gamma);
  require_term_count(p);
  const double mu_e = medium.mu_e;
  const double mu_f = medium.mu_f;
  const double mu_v = medium.require_mu_v();
  if (mu_e == mu_v) {
    throw Error(ErrorKind::DegenerateScheme, "mu_e = mu_v reduces to the V system");
  }
  require_ordering(medium);

  const double y = (mu_e - mu_v) / mu_f;
  // Standard layout conserves probability for y = x(m), the exchanged one
  // for y = 1 - x(m).
  const double x = variant == Variant::Standard ? y : 1.0 - y;
  const Modulus m = m_of_fraction_x(x, p, opts);
  const double mv = m.value();
  const double G2 = 4.0 * Gamma * Gamma;

  SolutionCoefficients c;
  c.p = p;
  c.m = mv;
  c.Gamma = Gamma;
  c.medium = medium;
  c.q = mu_v / (2.0 * Gamma * mv);
  c.A_f = std::sqrt(G2 * mv * (mu_e / mu_v - 1.0));
  if (variant == Variant::Standard) {
    c.family = Family::NSuperposed;
    c.A_e = std::sqrt(G2 * mv * mu_e * mu_e / (mu_f * mu_v));
    c.A_v = std::sqrt(G2 * mv * (1.0 - mu_e / mu_f));
    c.b_e = I * c.q * c.A_e / mu_e;
    c.b_v = I * c.q * c.A_v / mu_v;
    c.b_f = -(std::conj(c.A_f) / std::conj(c.A_e)) * (mu_e / mu_f);
  } else {
    c.family = Family::NSuperposedExchanged;
    c.A_e = std::sqrt(G2 * mu_e * mu_e / (mu_f * mu_v));
    c.A_v = std::sqrt(G2 * (1.0 - mu_e / mu_f));
    c.b_e = I * c.q * mv * c.A_e / mu_e;
    c.b_v = I * c.A_v / (2.0 * Gamma);
    c.b_f = -(std::conj(c.A_f) / std::conj(c.A_e)) * mu_e / (mv * mu_f);
  }
  return certified(c, opts);
}

double impossibility_margin(Modulus m) {
  const double q = qtilde(m);
  return 1.0 + 4.0 * (q * q + q) - m.value();
}

ImpossibilityReport check_impossibility(const MediumSpec& medium, int samples) {
  medium.validate();
  if (medium.scheme != Scheme::TwoLevel && medium.scheme != Scheme::V) {
    throw Error(ErrorKind::InvalidArgument, "impossibility applies to two-level and V media");
  }
  ImpossibilityReport rep;
  rep.scheme = medium.scheme;
  rep.samples = samples;
  rep.minMargin = HUGE_VAL;
  for (int k = 1; k <= samples; ++k) {
    const double m = static_cast<double>(k) / (samples + 1);
    const double margin = impossibility_margin(Modulus(m));
    if (margin < rep.minMargin) {
      rep.minMargin = margin;
      rep.mAtMinMargin = m;
    }
  }
  rep.noSolution = rep.minMargin > 0.0;
  return rep;
}

namespace {

// 1/|b_i|^2 as a function of m for the pure cnoidal N solutions, with
// y = (mu_e - mu_v)/mu_f.
double pure_inverse_occupancy(double m, double y, Variant variant) {
  return variant == Variant::Standard ? 1.0 + (1.0 - m) / m * y : y + (1.0 - y) / m;
}

double pure_modulus_from_occupancy(double b2, double y, Variant variant) {
  const double excess = 1.0 / b2 - 1.0;
  return variant == Variant::Standard ? y / (y + excess) : (1.0 - y) / (1.0 - y + excess);
}

}  // namespace

SolutionCoefficients solve_n_pure_cnoidal(double Gamma, const MediumSpec& medium,
                                          const PureCnoidalInput& input, Variant variant,
                                          const SolveOptions& opts) {
  medium.validate();
  require_positive_gamma(Gamma);
  if (medium.scheme == Scheme::Lambda && !nearly_equal(medium.mu_e, medium.mu_f)) {
    throw Error(ErrorKind::SchemeMismatch, "Lambda limit needs mu_e = mu_f");
  }
  const double mu_e = medium.mu_e;
  const double mu_f = medium.mu_f;
  const double mu_v = medium.require_mu_v();
  require_ordering(medium);
  const double y = (mu_e - mu_v) / mu_f;
  const bool free_modulus = y == 0.0;

  if (!input.b_i && !input.m) {
    throw Error(ErrorKind::InvalidArgument, "pure cnoidal solution needs b_i or m");
  }
  if (input.b_i) {
    const double b2 = std::norm(*input.b_i);
    if (!(b2 > 0.0 && b2 <= 1.0 + 1e-15)) {
      throw Error(ErrorKind::InvalidArgument, "need 0 < |b_i| <= 1");
    }
  }
  if (input.m) require_pulse_train(Modulus(*input.m));

  double m = 0.0;
  complex bi{1.0, 0.0};
  if (free_modulus && variant == Variant::Standard) {
    // Two-level and V media: |b_i| = 1 and m is a free parameter.
    if (!input.m) throw Error(ErrorKind::InvalidArgument, "two-level/V media leave m free; give m");
    if (input.b_i && std::abs(std::abs(*input.b_i) - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "two-level/V pure trains need |b_i| = 1");
    }
    m = *input.m;
    if (input.b_i) bi = *input.b_i / std::abs(*input.b_i);
  } else if (input.b_i) {
    const double b2 = std::norm(*input.b_i);
    if (b2 >= 1.0) {
      if (medium.scheme == Scheme::N) {
        throw Error(ErrorKind::UnitOccupancy, "N medium with mu_e > mu_v needs |b_i| < 1");
      }
      throw Error(ErrorKind::PulseLimit, "|b_i| = 1 forces m = 1: localized pulse, no train");
    }
    m = pure_modulus_from_occupancy(b2, y, variant);
    bi = *input.b_i;
    if (input.m && std::abs(*input.m - m) > 1e-9) {
      throw Error(ErrorKind::InvalidArgument,
                  "b_i and m are inconsistent: b_i implies m = " + std::to_string(m));
    }
  } else {
    m = *input.m;
    bi = 1.0 / std::sqrt(pure_inverse_occupancy(m, y, variant));
  }
  require_pulse_train(Modulus(m));

  const double G2 = 4.0 * Gamma * Gamma;
  SolutionCoefficients c;
  c.p = 1;
  c.m = m;
  c.Gamma = Gamma;
  c.medium = medium;
  c.b_i = bi;
  c.q = mu_v * std::norm(bi) / (2.0 * Gamma * m);
  c.A_f = std::sqrt(G2 * m * (mu_e / mu_v - 1.0));
  if (variant == Variant::Standard) {
    c.family = Family::NPureCnoidal;
    c.A_e = std::sqrt(G2 * mu_e * mu_e / (mu_f * mu_v));
    c.A_v = std::sqrt(G2 * (1.0 - mu_e / mu_f));
    c.b_e = I * mu_v * c.A_e * bi / (2.0 * mu_e * Gamma);
    c.b_v = I * c.A_v * bi / (2.0 * Gamma);
    c.b_f = -(std::conj(c.A_f) / std::conj(c.A_e)) * mu_e * bi / (m * mu_f);
  } else {
    c.family = Family::NPureCnoidalExchanged;
    c.A_e = std::sqrt(G2 * m * mu_e * mu_e / (mu_f * mu_v));
    c.A_v = std::sqrt(G2 * m * (1.0 - mu_e / mu_f));
    c.b_e = I * mu_v * c.A_e * bi / (2.0 * Gamma * m * mu_e);
    c.b_v = I * c.A_v * bi / (2.0 * Gamma * m);
    c.b_f = -(std::conj(c.A_f) / std::conj(c.A_e)) * (mu_e / mu_f) * bi;
  }
  return certified(c, opts);
}

double group_velocity(const SolutionCoefficients& c, double hostSpeed) {
  return 1.0 / (1.0 / hostSpeed + c.q / c.Gamma);
}

}  // namespace cnoidal
