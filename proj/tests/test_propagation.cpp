#include <doctest.h>

#include <cmath>

#include "cnoidal/constraints.hpp"
#include "cnoidal/error.hpp"
#include "cnoidal/propagation.hpp"

using namespace cnoidal;

namespace {

const SolutionCoefficients& lambda07() {
  static const SolutionCoefficients c =
      solve_lambda_superposed(Modulus(0.7), 1.0, MediumSpec::lambda(1.0, 1.0), 3);
  return c;
}

}  // namespace

TEST_CASE("grid validation") {
  SimGrid g;
  CHECK_NOTHROW(g.validate());
  g.nTau = 100;
  CHECK_THROWS_AS(g.validate(), Error);
  g = SimGrid{};
  g.nZeta = 8;
  CHECK_THROWS_AS(g.validate(), Error);
  g = SimGrid{};
  g.tauMax = g.tauMin;
  CHECK_THROWS_AS(g.validate(), Error);

  SimGrid narrow = default_sim_grid(lambda07());
  narrow.tauMax *= 0.25;
  CHECK_THROWS_AS(simulate(lambda07(), narrow), Error);

  const SimGrid r = refined(default_sim_grid(lambda07()));
  CHECK(r.dtau() == doctest::Approx(0.5 * default_sim_grid(lambda07()).dtau()));
  CHECK(r.dzeta() == doctest::Approx(0.5 * default_sim_grid(lambda07()).dzeta()));
}

TEST_CASE("empty medium stays put") {
  PropagationProblem pb;
  pb.initialField = [](double) { return Rabi{}; };
  pb.inflow = [](double) { return Amplitudes{complex{1.0, 0.0}, {}, {}, {}}; };
  pb.mu = {1.0, 1.0, 1.0};
  SimGrid g;
  g.nTau = 256;
  g.nZeta = 16;
  g.snapshots = 17;
  const SimHistory h = simulate(pb, g);
  CHECK(h.normDrift == 0.0);
  for (const auto& s : h.snapshots) {
    for (std::size_t k = 0; k < s.C.size(); ++k) {
      CHECK(s.C[k].i == complex{1.0, 0.0});
      CHECK(s.C[k].e == complex{});
      CHECK(s.Omega[k].e == complex{});
    }
  }
}

TEST_CASE("a single Rabi-flopping column conserves probability") {
  // constant field: Ci = cos(W tau/2), Ce = i sin(W tau/2)
  const double W = 2.0;
  PropagationProblem pb;
  pb.initialField = [W](double) { return Rabi{complex{W, 0.0}, {}, {}}; };
  pb.inflow = [](double) { return Amplitudes{complex{1.0, 0.0}, {}, {}, {}}; };
  pb.mu = {0.0, 0.0, 0.0};
  SimGrid g;
  g.tauMax = 5.0;
  g.nTau = 512;
  g.zetaMax = 1.0;
  g.nZeta = 16;
  g.snapshots = 17;
  const SimHistory h = simulate(pb, g);
  double worst = 0.0;
  for (std::size_t k = 0; k < h.tau.size(); ++k) {
    const Amplitudes& c = h.last().C[k];
    worst = std::max(worst, std::abs(c.i - std::cos(0.5 * W * h.tau[k])));
    worst = std::max(worst, std::abs(c.e - complex{0.0, std::sin(0.5 * W * h.tau[k])}));
  }
  CHECK(worst < 1e-9);
  CHECK(h.normDrift < 1e-10);
}

TEST_CASE("zero propagation distance") {
  SimGrid g = default_sim_grid(lambda07());
  g.zetaMax = 0.0;
  g.nZeta = 16;
  g.snapshots = 17;
  const SimHistory h = simulate(lambda07(), g);
  CHECK(shape_preservation_error(h, lambda07()) == 0.0);
}

TEST_CASE("lambda superposed train keeps its shape") {
  const SolutionCoefficients& c = lambda07();
  const SimGrid g = default_sim_grid(c);
  CHECK(g.nTau == 2048);
  CHECK(g.nZeta == 256);
  const SimHistory h = simulate(c, g);
  CHECK(h.normDrift < 1e-8);
  const double e0 = shape_preservation_error(h, c);
  CHECK(e0 < 1e-3);
  const VelocityMeasurement v = measure_velocity(h, c);
  CHECK(std::abs(v.measured / v.predicted - 1.0) < 0.01);
  CHECK(v.zeta.size() == h.snapshots.size());

  const SimHistory fine = simulate(c, refined(g));
  const double e1 = shape_preservation_error(fine, c);
  CHECK(e0 / e1 >= 4.0);
}

TEST_CASE("N superposed train keeps its shape") {
  const double x = fraction_x_of_m(Modulus(0.6));
  const SolutionCoefficients c = solve_n_superposed(1.0, MediumSpec::n_system(0.98, 1.0, 0.98 - x), 3);
  const SimHistory h = simulate(c, default_sim_grid(c));
  CHECK(h.normDrift < 1e-8);
  CHECK(shape_preservation_error(h, c) < 1e-2);
}

TEST_CASE("coarse grid on a strong field is reported") {
  // Rabi frequency far beyond the tau resolution
  PropagationProblem pb;
  pb.initialField = [](double) { return Rabi{complex{400.0, 0.0}, {}, {}}; };
  pb.inflow = [](double) { return Amplitudes{complex{1.0, 0.0}, {}, {}, {}}; };
  pb.mu = {1.0, 0.0, 0.0};
  SimGrid g;
  g.tauMax = 10.0;
  g.nTau = 256;
  g.zetaMax = 1.0;
  g.nZeta = 16;
  g.snapshots = 5;
  try {
    simulate(pb, g);
    FAIL("expected UnstableRun");
  } catch (const Error& e) {
    CAPTURE(e.what());
    CHECK(e.kind() == ErrorKind::UnstableRun);
  }
}
