#pragma once

// Solution builder: samples coefficient sets on an X grid and certifies them
// against the reduced (single-variable) Maxwell-Schroedinger equations.
//
// With X = q zeta - Gamma tau, d/dtau -> -Gamma d/dX and d/dzeta -> q d/dX.
// Derivatives come from the elliptic derivative relations applied term by
// term, so the residual measures only the constraint algebra.

#include <span>
#include <string>
#include <vector>

#include "cnoidal/solution.hpp"
#include "cnoidal/superposition.hpp"

namespace cnoidal {

struct XGrid {
  double xMin = 0.0;
  double xMax = 1.0;
  int n = 2;

  double at(int k) const noexcept { return xMin + (xMax - xMin) * k / (n - 1); }
  double spacing() const noexcept { return (xMax - xMin) / (n - 1); }
};

/// Three fundamental periods starting at X = 0.
XGrid default_grid(const SolutionCoefficients& c, int points = 4096);

/// Channel values and X-derivatives at one point of the ansatz.
struct AnsatzPoint {
  double X = 0.0;
  Amplitudes C;
  Amplitudes dC;
  Rabi Omega;
  Rabi dOmega;
  SuperposedSample wave;
};

class AnsatzEvaluator {
public:
  explicit AnsatzEvaluator(const SolutionCoefficients& c);

  AnsatzPoint operator()(double X) const;
  const SolutionCoefficients& coefficients() const noexcept { return c_; }

private:
  SolutionCoefficients c_;
  SuperposedBasis basis_;
};

struct Profile {
  std::vector<double> xs;
  std::vector<complex> Ci, Ce, Cf, Cv;
  std::vector<complex> OmegaE, OmegaF, OmegaV;
  /// Bare superposed waves S~, C~, D~ (sn, cn, dn when p = 1).
  std::vector<double> waveS, waveC, waveD;
  bool hasV = false;
  SolutionCoefficients coeffs;
};

Profile build_profile(const SolutionCoefficients& c, const XGrid& grid);

/// max over the grid of |sum |C|^2 - 1|.
double probability_deviation(const Profile& p);

struct EquationResidual {
  std::string name;
  double raw = 0.0;
  double relative = 0.0;
};

struct ResidualReport {
  /// Three (Lambda) or four (N) Schroedinger equations, then two or three
  /// Maxwell equations.
  std::vector<EquationResidual> perEquation;
  /// max over the grid of max|Omega| * max|C|.
  double relativeScale = 0.0;
  double stencilSpacing = 0.0;
  /// Largest raw residual of any equation at each grid point.
  std::vector<double> pointwise;

  double max_raw() const noexcept;
  double max_relative() const noexcept;
};

/// Residuals of the reduced equations from sampled channels and derivatives.
ResidualReport residual_from_samples(std::span<const AnsatzPoint> samples, double q,
                                     double Gamma, const CouplingConstants& mu, bool hasV,
                                     double spacing);

ResidualReport ode_residual(const SolutionCoefficients& c, const XGrid& grid);

struct AmplitudeContrast {
  double ratioDC = 0.0;
  double ratioDS = 0.0;
};

/// max|D~| / max|C~| and max|D~| / max|S~| on the profile's bare waves.
/// Throws UndefinedRatio if a denominator channel vanishes identically.
AmplitudeContrast amplitude_contrast(const Profile& p);

constexpr double kResidualTolerance = 1e-8;
constexpr double kProbabilityTolerance = 1e-9;

struct Certificate {
  ResidualReport residual;
  double probabilityDeviation = 0.0;

  bool passed() const noexcept {
    return residual.max_relative() < kResidualTolerance &&
           probabilityDeviation < kProbabilityTolerance;
  }
};

Certificate certificate(const SolutionCoefficients& c, int points = 4096);

/// certificate() that throws Uncertified on failure.
Certificate certify(const SolutionCoefficients& c, int points = 4096);

}  // namespace cnoidal
