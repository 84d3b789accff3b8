#pragma once

// Media and solution coefficient sets shared by the solvers, the profile
// builder and the propagation simulator.
//
// Level scheme.  The ground state i couples to the excited state e through
// Omega_e; e couples to f through Omega_f (the Lambda system).  The N system
// adds v, coupled to i through Omega_v, giving the chain v - i - e - f.  In
// the retarded frame (tau = t - z/c, zeta = z) the envelopes obey
//
//   i dCe/dtau = -(Omega_f Cf + Omega_e Ci)/2
//   i dCi/dtau = -(Omega_e* Ce + Omega_v* Cv)/2
//   i dCf/dtau = -Omega_f* Ce/2
//   i dCv/dtau = -Omega_v Ci/2
//   dOmega_f/dzeta = i mu_f Ce Cf*
//   dOmega_e/dzeta = i mu_e Ce Ci*
//   dOmega_v/dzeta = i mu_v Cv Ci*
//
// Two-level and V media are the N equations with mu_e = mu_v = mu_f and
// mu_e = mu_v respectively.

#include <complex>
#include <optional>
#include <string_view>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

using complex = std::complex<double>;

/// Atomic probability amplitudes of the four levels (Cv stays 0 in Lambda
/// media).
struct Amplitudes {
  complex i, e, f, v;

  double norm() const noexcept { return std::norm(i) + std::norm(e) + std::norm(f) + std::norm(v); }
};

/// Rabi envelopes of the three transitions (Omega_v stays 0 in Lambda media).
struct Rabi {
  complex e, f, v;
};

enum class Scheme { TwoLevel, V, Lambda, N };

std::string_view to_string(Scheme s) noexcept;

/// Propagation constants of a medium (nondimensional, c = 1).
///
/// For the Lambda scheme mu_v is optional: when set it is the auxiliary
/// constant mu that plays the role of mu_v in the pure cnoidal limit.
struct MediumSpec {
  Scheme scheme = Scheme::Lambda;
  double mu_e = 1.0;
  double mu_f = 1.0;
  std::optional<double> mu_v;

  static MediumSpec two_level(double mu);
  static MediumSpec v_system(double mu_ev, double mu_f);
  static MediumSpec lambda(double mu_e, double mu_f, std::optional<double> mu = std::nullopt);
  static MediumSpec n_system(double mu_e, double mu_f, double mu_v);

  /// Throws InvalidArgument for non-positive constants and SchemeMismatch
  /// when the scheme's equalities do not hold.
  void validate() const;
  double require_mu_v() const;
};

enum class Variant { Standard, Exchanged };

enum class Family {
  LambdaSuperposed,
  LambdaSuperposedExchanged,
  LambdaP1,
  LambdaP1Exchanged,
  NSuperposed,
  NSuperposedExchanged,
  NPureCnoidal,
  NPureCnoidalExchanged,
};

std::string_view to_string(Family f) noexcept;

/// Which elliptic function each channel carries.  In both layouts Ci and
/// Omega_f are sn-type.  UpperDn: Ce, Cv are dn-type and Cf, Omega_e, Omega_v
/// cn-type.  UpperCn swaps the two roles.
enum class Layout { UpperDn, UpperCn };

Layout layout_of(Family f) noexcept;
bool has_v_level(Family f) noexcept;
bool is_superposed(Family f) noexcept;

struct SolutionCoefficients {
  Family family = Family::LambdaSuperposed;
  int p = 3;
  double m = 0.5;
  double Gamma = 1.0;
  double q = 0.0;
  /// Auxiliary constant mu (Lambda families only).
  double mu = 0.0;
  complex A_e, A_f, A_v;
  complex b_i{1.0, 0.0};
  complex b_e, b_f, b_v;
  MediumSpec medium;
};

/// Propagation constant driving each Maxwell equation for this family.
struct CouplingConstants {
  double e = 0.0;
  double f = 0.0;
  double v = 0.0;
};

CouplingConstants couplings(const SolutionCoefficients& c);

/// Period of the solution in X: 4K/p for superposed waves, 4K for p = 1.
double fundamental_period(const SolutionCoefficients& c);

}  // namespace cnoidal
