#pragma once

// Propagation simulator for the full (zeta, tau) Maxwell-Schroedinger system.
//
// At each zeta the atoms are integrated along tau with classical RK4, using
// the current field arrays (cubic interpolation at half steps).  Fields are
// advanced in zeta by a trapezoidal predictor-corrector.  Initial fields at
// zeta = 0 and atomic states at the inflow edge tau = tauMin come from the
// problem definition; for analytic solutions both are sampled at
// X = q zeta - Gamma tau.

#include <functional>
#include <vector>

#include "cnoidal/solution.hpp"

namespace cnoidal {

struct SimGrid {
  double tauMin = 0.0;
  double tauMax = 1.0;
  int nTau = 2048;
  double zetaMax = 1.0;
  int nZeta = 256;
  /// Number of stored zeta slices, including zeta = 0 and zetaMax.
  int snapshots = 33;

  double dtau() const noexcept { return (tauMax - tauMin) / (nTau - 1); }
  double dzeta() const noexcept { return zetaMax / nZeta; }
  double tau_at(int k) const noexcept { return tauMin + (tauMax - tauMin) * k / (nTau - 1); }
  /// Throws InvalidArgument unless nTau >= 256, nZeta >= 16, tauMax > tauMin,
  /// zetaMax >= 0 and 2 <= snapshots <= nZeta + 1.
  void validate() const;
};

/// Propagation distance of the default grid in pulse widths.  Gamma sets the
/// time unit, so one width is 1/Gamma in tau and c/Gamma = 1/Gamma in zeta.
constexpr double kDefaultPulseWidths = 5.0;

/// nTau = 2048 over four periods in tau; nZeta = 256 over
/// kDefaultPulseWidths / Gamma.
SimGrid default_sim_grid(const SolutionCoefficients& c);

/// Halves both step sizes (nTau - 1 and nZeta doubled).
SimGrid refined(const SimGrid& g);

struct PropagationProblem {
  std::function<Rabi(double tau)> initialField;
  std::function<Amplitudes(double zeta)> inflow;
  CouplingConstants mu;
};

/// Fields at zeta = 0 and atoms at the inflow edge tauMin from the ansatz.
PropagationProblem analytic_problem(const SolutionCoefficients& c, double tauMin);

struct Snapshot {
  double zeta = 0.0;
  std::vector<Amplitudes> C;
  std::vector<Rabi> Omega;
};

struct SimHistory {
  std::vector<double> tau;
  std::vector<Snapshot> snapshots;
  /// max over all (zeta, tau) of |sum |C|^2 - 1|.
  double normDrift = 0.0;
  SimGrid grid;

  const Snapshot& last() const { return snapshots.back(); }
};

constexpr double kUnstableDrift = 1e-4;

/// Throws UnstableRun when normDrift exceeds kUnstableDrift.
SimHistory simulate(const PropagationProblem& problem, const SimGrid& grid);

/// Certifies c, checks that the tau window spans at least two periods, then
/// runs analytic_problem(c, grid.tauMin).
SimHistory simulate(const SolutionCoefficients& c, const SimGrid& grid);

/// Relative L2 distance between the simulated fields of snapshot s and the
/// analytic fields at X = q zeta - Gamma tau, maximized over channels.
double shape_error_at(const SimHistory& h, const Snapshot& s, const SolutionCoefficients& c);

/// shape_error_at for the last snapshot.
double shape_preservation_error(const SimHistory& h, const SolutionCoefficients& c);

struct VelocityMeasurement {
  std::vector<double> zeta;
  /// Delay in tau of the tracked channel relative to zeta = 0.
  std::vector<double> delay;
  /// Least-squares d(delay)/d(zeta).
  double slope = 0.0;
  /// 1/v = 1/hostSpeed + slope.
  double measured = 0.0;
  double predicted = 0.0;
};

/// Tracks the largest field channel by cross-correlation against the
/// zeta = 0 snapshot (lags within half a period of the previous delay,
/// parabolic refinement).
VelocityMeasurement measure_velocity(const SimHistory& h, const SolutionCoefficients& c,
                                     double hostSpeed = 1.0);

}  // namespace cnoidal
