#include "cnoidal/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cnoidal/constraints.hpp"
#include "cnoidal/error.hpp"
#include "cnoidal/profile.hpp"

namespace cnoidal {

namespace {

const complex I{0.0, 1.0};

Rabi operator+(const Rabi& a, const Rabi& b) { return {a.e + b.e, a.f + b.f, a.v + b.v}; }
Rabi operator*(double s, const Rabi& a) { return {s * a.e, s * a.f, s * a.v}; }

Amplitudes operator+(const Amplitudes& a, const Amplitudes& b) {
  return {a.i + b.i, a.e + b.e, a.f + b.f, a.v + b.v};
}
Amplitudes operator*(double s, const Amplitudes& a) { return {s * a.i, s * a.e, s * a.f, s * a.v}; }

// dC/dtau for fixed fields.
Amplitudes atom_rhs(const Amplitudes& C, const Rabi& W) {
  return {0.5 * I * (std::conj(W.e) * C.e + std::conj(W.v) * C.v),
          0.5 * I * (W.f * C.f + W.e * C.i),
          0.5 * I * std::conj(W.f) * C.e,
          0.5 * I * W.v * C.i};
}

// Field at the midpoint of [k, k+1] from four neighbouring samples.
Rabi midpoint(const std::vector<Rabi>& W, std::size_t k) {
  const std::size_t n = W.size();
  if (k == 0) {
    return (1.0 / 16.0) * (5.0 * W[0] + 15.0 * W[1] + (-5.0) * W[2] + W[3]);
  }
  if (k + 2 == n) {
    return (1.0 / 16.0) * (W[n - 4] + (-5.0) * W[n - 3] + 15.0 * W[n - 2] + 5.0 * W[n - 1]);
  }
  return (1.0 / 16.0) * ((-1.0) * W[k - 1] + 9.0 * W[k] + 9.0 * W[k + 1] + (-1.0) * W[k + 2]);
}

void integrate_atoms(const std::vector<Rabi>& W, const Amplitudes& start, double dt,
                     std::vector<Amplitudes>& C) {
  C[0] = start;
  for (std::size_t k = 0; k + 1 < W.size(); ++k) {
    const Rabi& w0 = W[k];
    const Rabi wh = midpoint(W, k);
    const Rabi& w1 = W[k + 1];
    const Amplitudes& y = C[k];
    const Amplitudes k1 = atom_rhs(y, w0);
    const Amplitudes k2 = atom_rhs(y + (0.5 * dt) * k1, wh);
    const Amplitudes k3 = atom_rhs(y + (0.5 * dt) * k2, wh);
    const Amplitudes k4 = atom_rhs(y + dt * k3, w1);
    C[k + 1] = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

void field_source(const std::vector<Amplitudes>& C, const CouplingConstants& mu,
                  std::vector<Rabi>& F) {
  for (std::size_t k = 0; k < C.size(); ++k) {
    const Amplitudes& c = C[k];
    F[k] = {I * mu.e * c.e * std::conj(c.i), I * mu.f * c.e * std::conj(c.f),
            I * mu.v * c.v * std::conj(c.i)};
  }
}

double drift(const std::vector<Amplitudes>& C) {
  double d = 0.0;
  for (const auto& c : C) d = std::max(d, std::abs(c.norm() - 1.0));
  return d;
}

double tau_period(const SolutionCoefficients& c) { return fundamental_period(c) / c.Gamma; }

}  // namespace

void SimGrid::validate() const {
  if (nTau < 256) throw Error(ErrorKind::InvalidArgument, "nTau must be >= 256");
  if (nZeta < 16) throw Error(ErrorKind::InvalidArgument, "nZeta must be >= 16");
  if (!(tauMax > tauMin)) throw Error(ErrorKind::InvalidArgument, "need tauMax > tauMin");
  if (!(zetaMax >= 0.0) || !std::isfinite(zetaMax)) {
    throw Error(ErrorKind::InvalidArgument, "zetaMax must be finite and >= 0");
  }
  if (snapshots < 2 || snapshots > nZeta + 1) {
    throw Error(ErrorKind::InvalidArgument, "snapshots must lie in [2, nZeta + 1]");
  }
}

SimGrid default_sim_grid(const SolutionCoefficients& c) {
  SimGrid g;
  g.tauMin = 0.0;
  g.tauMax = 4.0 * tau_period(c);
  g.nTau = 2048;
  g.zetaMax = kDefaultPulseWidths / c.Gamma;
  g.nZeta = 256;
  return g;
}

SimGrid refined(const SimGrid& g) {
  SimGrid r = g;
  r.nTau = 2 * (g.nTau - 1) + 1;
  r.nZeta = 2 * g.nZeta;
  return r;
}

PropagationProblem analytic_problem(const SolutionCoefficients& c, double tauMin) {
  const AnsatzEvaluator eval(c);
  PropagationProblem pb;
  pb.mu = couplings(c);
  pb.initialField = [eval, c](double tau) { return eval(-c.Gamma * tau).Omega; };
  pb.inflow = [eval, c, tauMin](double zeta) { return eval(c.q * zeta - c.Gamma * tauMin).C; };
  return pb;
}

namespace {

SimHistory run(const PropagationProblem& pb, const SimGrid& grid) {
  const auto& inflow = pb.inflow;
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.nTau);
  const double dt = grid.dtau();
  const double h = grid.dzeta();

  SimHistory hist;
  hist.grid = grid;
  hist.tau.resize(n);
  std::vector<Rabi> W(n);
  for (std::size_t k = 0; k < n; ++k) {
    hist.tau[k] = grid.tau_at(static_cast<int>(k));
    W[k] = pb.initialField(hist.tau[k]);
  }

  std::vector<int> keep(static_cast<std::size_t>(grid.snapshots));
  for (int j = 0; j < grid.snapshots; ++j) {
    keep[static_cast<std::size_t>(j)] = static_cast<int>(
        std::lround(static_cast<double>(j) * grid.nZeta / (grid.snapshots - 1)));
  }
  std::size_t next = 0;

  std::vector<Amplitudes> C(n), C1(n);
  std::vector<Rabi> F0(n), F1(n), W1(n);
  integrate_atoms(W, inflow(0.0), dt, C);
  hist.normDrift = drift(C);

  for (int step = 0;; ++step) {
    const double zeta = step * h;
    if (next < keep.size() && keep[next] == step) {
      hist.snapshots.push_back({zeta, C, W});
      ++next;
    }
    if (step == grid.nZeta) break;

    const Amplitudes start = inflow(zeta + h);
    field_source(C, pb.mu, F0);
    for (std::size_t k = 0; k < n; ++k) W1[k] = W[k] + h * F0[k];
    integrate_atoms(W1, start, dt, C1);
    for (int sweep = 0; sweep < 2; ++sweep) {
      field_source(C1, pb.mu, F1);
      for (std::size_t k = 0; k < n; ++k) W1[k] = W[k] + (0.5 * h) * (F0[k] + F1[k]);
      integrate_atoms(W1, start, dt, C1);
    }
    W.swap(W1);
    C.swap(C1);
    hist.normDrift = std::max(hist.normDrift, drift(C));
    if (!(hist.normDrift <= kUnstableDrift)) {
      throw Error(ErrorKind::UnstableRun,
                  "norm drift " + std::to_string(hist.normDrift) + " at zeta = " +
                      std::to_string(zeta + h) + "; refine the grid");
    }
  }
  return hist;
}

}  // namespace

SimHistory simulate(const PropagationProblem& problem, const SimGrid& grid) {
  if (!problem.initialField || !problem.inflow) {
    throw Error(ErrorKind::InvalidArgument, "problem needs initial field and inflow data");
  }
  return run(problem, grid);
}

SimHistory simulate(const SolutionCoefficients& c, const SimGrid& grid) {
  certify(c);
  grid.validate();
  if (grid.tauMax - grid.tauMin < 2.0 * tau_period(c) * (1.0 - 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "tau window must span at least two periods");
  }
  return run(analytic_problem(c, grid.tauMin), grid);
}

double shape_error_at(const SimHistory& h, const Snapshot& s, const SolutionCoefficients& c) {
  const AnsatzEvaluator eval(c);
  double num[3] = {0, 0, 0};
  double den[3] = {0, 0, 0};
  for (std::size_t k = 0; k < h.tau.size(); ++k) {
    const Rabi a = eval(c.q * s.zeta - c.Gamma * h.tau[k]).Omega;
    const Rabi& w = s.Omega[k];
    num[0] += std::norm(w.e - a.e);
    num[1] += std::norm(w.f - a.f);
    num[2] += std::norm(w.v - a.v);
    den[0] += std::norm(a.e);
    den[1] += std::norm(a.f);
    den[2] += std::norm(a.v);
  }
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (den[j] > 0.0) {
      worst = std::max(worst, std::sqrt(num[j] / den[j]));
    } else {
      worst = std::max(worst, std::sqrt(num[j]));
    }
  }
  return worst;
}

double shape_preservation_error(const SimHistory& h, const SolutionCoefficients& c) {
  return shape_error_at(h, h.last(), c);
}

namespace {

std::vector<complex> channel(const Snapshot& s, int which) {
  std::vector<complex> out;
  out.reserve(s.Omega.size());
  for (const auto& w : s.Omega) out.push_back(which == 0 ? w.e : which == 1 ? w.f : w.v);
  return out;
}

// mean |a[k] - b[k - lag]|^2 over the overlap
double mismatch(const std::vector<complex>& a, const std::vector<complex>& b, long lag) {
  const long n = static_cast<long>(a.size());
  const long lo = std::max(0L, lag);
  const long hi = std::min(n, n + lag);
  if (hi - lo < 2) return HUGE_VAL;
  double sum = 0.0;
  for (long k = lo; k < hi; ++k) sum += std::norm(a[k] - b[k - lag]);
  return sum / static_cast<double>(hi - lo);
}

}  // namespace

VelocityMeasurement measure_velocity(const SimHistory& h, const SolutionCoefficients& c,
                                     double hostSpeed) {
  if (h.snapshots.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "velocity needs at least two snapshots");
  }
  const Snapshot& s0 = h.snapshots.front();
  int best = 0;
  double bestEnergy = -1.0;
  for (int j = 0; j < 3; ++j) {
    double e = 0.0;
    for (const auto& w : channel(s0, j)) e += std::norm(w);
    if (e > bestEnergy) {
      bestEnergy = e;
      best = j;
    }
  }
  const std::vector<complex> ref = channel(s0, best);
  const double dt = h.grid.dtau();
  const long window = std::max(1L, static_cast<long>(0.5 * tau_period(c) / dt));

  VelocityMeasurement vm;
  vm.zeta.push_back(s0.zeta);
  vm.delay.push_back(0.0);
  double prev = 0.0;
  for (std::size_t j = 1; j < h.snapshots.size(); ++j) {
    const std::vector<complex> cur = channel(h.snapshots[j], best);
    const long center = std::lround(prev / dt);
    long arg = center;
    double low = HUGE_VAL;
    for (long L = center - window; L <= center + window; ++L) {
      const double d = mismatch(cur, ref, L);
      if (d < low) {
        low = d;
        arg = L;
      }
    }
    const double dm = mismatch(cur, ref, arg - 1);
    const double dp = mismatch(cur, ref, arg + 1);
    double offset = 0.0;
    const double curv = dm - 2.0 * low + dp;
    if (std::isfinite(dm) && std::isfinite(dp) && curv > 0.0) offset = 0.5 * (dm - dp) / curv;
    prev = (static_cast<double>(arg) + offset) * dt;
    vm.zeta.push_back(h.snapshots[j].zeta);
    vm.delay.push_back(prev);
  }

  const double nPts = static_cast<double>(vm.zeta.size());
  double sz = 0, sd = 0, szz = 0, szd = 0;
  for (std::size_t j = 0; j < vm.zeta.size(); ++j) {
    sz += vm.zeta[j];
    sd += vm.delay[j];
    szz += vm.zeta[j] * vm.zeta[j];
    szd += vm.zeta[j] * vm.delay[j];
  }
  const double var = nPts * szz - sz * sz;
  vm.slope = var > 0.0 ? (nPts * szd - sz * sd) / var : 0.0;
  vm.measured = 1.0 / (1.0 / hostSpeed + vm.slope);
  vm.predicted = group_velocity(c, hostSpeed);
  return vm;
}

}  // namespace cnoidal
