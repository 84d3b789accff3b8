#pragma once

// Constraint solver: maps medium parameters to complete coefficient sets for
// every solution family, with the feasibility window of the superposed
// solutions and the two-level / V impossibility check.
//
// Probability conservation for the superposed p = 3 families reduces to one
// relation between the modulus and a ratio of propagation constants,
//
//   x(m) = [1/m - 1 + (4/m)(q^2 + q)] / [1/m - 1 + (2/m)((q+1)^2 - m/(q+1)^2)],
//
// with q = dn(2K/3, m).  x is (mu_e - mu)/mu_e for Lambda media and
// (mu_e - mu_v)/mu_f for N media.  Every solver certifies its output with the
// reduced-equation residual before returning it.

#include <optional>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/solution.hpp"

namespace cnoidal {

struct SolveOptions {
  /// Bracket width at which scalar inversions stop.
  double rootTolerance = 1e-12;
  /// Grid used for the residual certificate (three fundamental periods).
  int certifyPoints = 4096;
};

double fraction_x_of_m(Modulus m);

/// Same fraction for p superposed terms, (1 - m/alpha^2)/(1 - m~).  p = 3
/// gives fraction_x_of_m.
double fraction_x_of_m(Modulus m, int p);

/// Inverse of fraction_x_of_m on 0 < m < 1.  Throws InfeasibleFraction when x
/// lies outside the range of the map.
Modulus m_of_fraction_x(double x, const SolveOptions& opts = {});

/// Inverse of the p-term fraction.
Modulus m_of_fraction_x(double x, int p, const SolveOptions& opts = {});

struct FeasibilityWindow {
  double xMin = 0.0;
  /// Exclusive upper bound.
  double xMax = 1.0;
  /// Modulus at which xMin was found.
  double mAtMin = 0.0;
  /// Whether x(m) decreased strictly across the whole tabulation.
  bool monotone = false;
};

/// Minimum of x(m) over 0 < m < 1 from a 10^4-point tabulation refined by
/// golden-section search.
FeasibilityWindow feasibility_window();

/// Lambda superposed coefficients for an explicit auxiliary mu, without
/// imposing probability conservation.  Exposed so that off-constraint
/// parameter sets can be examined; solvers go through
/// solve_lambda_superposed.
SolutionCoefficients lambda_superposed_coefficients(Modulus m, double Gamma,
                                                    const MediumSpec& medium, double mu, int p,
                                                    Variant variant);

SolutionCoefficients solve_lambda_superposed(Modulus m, double Gamma, const MediumSpec& medium,
                                             int p, Variant variant = Variant::Standard,
                                             const SolveOptions& opts = {});

/// |b_i| of the p = 1 Lambda solution for a given mu/mu_e.
double lambda_p1_occupancy(Modulus m, double muRatio, Variant variant);

/// Modulus fixed by a ground-state amplitude b_i and mu/mu_e.  |b_i| = 1
/// forces m = 1 and throws PulseLimit.
Modulus lambda_p1_modulus(double b_i, double muRatio, Variant variant);

/// Ground-state amplitude of the p = 1 train carried by the medium that
/// supports the superposed train of modulus m: x(m) fixes mu/mu_e = 1 - x,
/// which is then fed to lambda_p1_occupancy at the same m.
double lambda_chain_occupancy(Modulus m);

SolutionCoefficients solve_lambda_p1(Modulus m, double Gamma, double muRatio,
                                     const MediumSpec& medium, Variant variant,
                                     const SolveOptions& opts = {});

SolutionCoefficients solve_n_superposed(double Gamma, const MediumSpec& medium, int p,
                                        Variant variant = Variant::Standard,
                                        const SolveOptions& opts = {});

struct ImpossibilityReport {
  Scheme scheme = Scheme::TwoLevel;
  bool noSolution = false;
  /// min over the grid of 1 + 4(q^2 + q) - m.
  double minMargin = 0.0;
  double mAtMinMargin = 0.0;
  int samples = 0;
};

/// 1 + 4(q^2 + q) - m; a superposed two-level or V solution would need zero.
double impossibility_margin(Modulus m);

ImpossibilityReport check_impossibility(const MediumSpec& medium, int samples = 999);

/// Either the ground-state amplitude, the modulus, or both (then they must
/// agree).  Two-level and V media leave m free and need it explicitly.
struct PureCnoidalInput {
  std::optional<complex> b_i;
  std::optional<double> m;
};

SolutionCoefficients solve_n_pure_cnoidal(double Gamma, const MediumSpec& medium,
                                          const PureCnoidalInput& input, Variant variant,
                                          const SolveOptions& opts = {});

/// Lab-frame velocity of the train from X = q zeta - Gamma tau:
/// 1/v = 1/hostSpeed + q/Gamma.
double group_velocity(const SolutionCoefficients& c, double hostSpeed = 1.0);

}  // namespace cnoidal
