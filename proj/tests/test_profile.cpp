#include <doctest.h>

#include <cmath>
#include <vector>

#include "cnoidal/constraints.hpp"
#include "cnoidal/error.hpp"
#include "cnoidal/profile.hpp"
#include "oracles.hpp"

using namespace cnoidal;

namespace {

const MediumSpec kLambda = MediumSpec::lambda(1.0, 1.0);

// One certified coefficient set per family at modulus m.
std::vector<SolutionCoefficients> families(double m) {
  std::vector<SolutionCoefficients> out;
  const double x = fraction_x_of_m(Modulus(m));
  for (Variant v : {Variant::Standard, Variant::Exchanged}) {
    out.push_back(solve_lambda_superposed(Modulus(m), 1.0, kLambda, 3, v));
    out.push_back(solve_lambda_p1(Modulus(m), 1.0, 0.3, kLambda, v));
    const double y = v == Variant::Standard ? x : 1.0 - x;
    out.push_back(solve_n_superposed(1.0, MediumSpec::n_system(0.98, 1.0, 0.98 - y), 3, v));
    out.push_back(solve_n_pure_cnoidal(1.0, MediumSpec::n_system(0.8, 1.0, 0.5), {std::nullopt, m}, v));
  }
  return out;
}

// Residual from fourth-order finite differences of the sampled channels.
double fd_residual(const SolutionCoefficients& c) {
  const AnsatzEvaluator eval(c);
  const double h = 1e-3;
  const double span = 3.0 * fundamental_period(c);
  std::vector<AnsatzPoint> pts;
  for (int k = 0; k < 300; ++k) {
    const double X = span * k / 299.0;
    AnsatzPoint pt = eval(X);
    const auto d = [&](auto pick) {
      return oracle::derivative([&](double u) { return pick(eval(u)); }, X, h);
    };
    pt.dC = {d([](const AnsatzPoint& a) { return a.C.i; }), d([](const AnsatzPoint& a) { return a.C.e; }),
             d([](const AnsatzPoint& a) { return a.C.f; }), d([](const AnsatzPoint& a) { return a.C.v; })};
    pt.dOmega = {d([](const AnsatzPoint& a) { return a.Omega.e; }),
                 d([](const AnsatzPoint& a) { return a.Omega.f; }),
                 d([](const AnsatzPoint& a) { return a.Omega.v; })};
    pts.push_back(pt);
  }
  return residual_from_samples(pts, c.q, c.Gamma, couplings(c), has_v_level(c.family), h).max_relative();
}

}  // namespace

TEST_CASE("every family certifies") {
  for (double m : {0.2, 0.5, 0.7, 0.9}) {
    for (const SolutionCoefficients& c : families(m)) {
      CAPTURE(m);
      CAPTURE(to_string(c.family));
      const Certificate cert = certificate(c);
      CHECK(cert.residual.max_relative() < 1e-8);
      CHECK(cert.probabilityDeviation < 1e-9);
      CHECK(cert.residual.perEquation.size() == (has_v_level(c.family) ? 7u : 5u));
    }
  }
}

TEST_CASE("finite-difference residual agrees") {
  for (const SolutionCoefficients& c : families(0.6)) {
    CAPTURE(to_string(c.family));
    CHECK(fd_residual(c) < 1e-8);
  }
}

TEST_CASE("broken coefficients are detected") {
  SolutionCoefficients c = solve_lambda_superposed(Modulus(0.7), 1.0, kLambda, 3);
  SolutionCoefficients a = c;
  a.A_e *= 1.01;
  CHECK(ode_residual(a, default_grid(a)).max_relative() > 1e-3);
  SolutionCoefficients b = c;
  b.b_f *= 1.0 + 1e-3;
  const double dev = probability_deviation(build_profile(b, default_grid(b)));
  CHECK(dev >= 1e-5);
  CHECK(dev <= 1e-1);
  CHECK_THROWS_AS(certify(a), Error);
}

TEST_CASE("trivial residual") {
  std::vector<AnsatzPoint> pts(10);
  // all population in the ground state, no field
  for (auto& p : pts) p.C = {complex{0.6, 0.8}, {}, {}, {}};
  const ResidualReport r = residual_from_samples(pts, 1.0, 1.0, {1.0, 1.0, 1.0}, true, 0.1);
  CHECK(r.max_raw() == 0.0);
  CHECK(r.max_relative() == 0.0);
  // an excited amplitude without a field drives the Maxwell equation
  for (auto& p : pts) p.C = {complex{0.6, 0.0}, complex{0.0, 0.8}, {}, {}};
  const ResidualReport s = residual_from_samples(pts, 1.0, 1.0, {1.0, 1.0, 1.0}, true, 0.1);
  CHECK(s.max_raw() == doctest::Approx(0.48));
}

TEST_CASE("profile layout and periodicity") {
  const SolutionCoefficients c = solve_lambda_superposed(Modulus(0.7), 1.0, kLambda, 3);
  const XGrid g{0.0, 2.0 * fundamental_period(c), 801};
  const Profile p = build_profile(c, g);
  CHECK(p.xs.size() == 801);
  CHECK(p.Ci.size() == 801);
  CHECK_FALSE(p.hasV);
  CHECK(p.Cv.empty());
  CHECK(probability_deviation(p) < 1e-9);
  for (std::size_t k = 0; k < 400; ++k) {
    CHECK(std::abs(p.Ce[k] - p.Ce[k + 400]) < 1e-12);
    CHECK(std::abs(p.OmegaF[k] - p.OmegaF[k + 400]) < 1e-12);
  }

  const SolutionCoefficients tl =
      solve_n_pure_cnoidal(1.0, MediumSpec::two_level(1.0), {complex{1.0, 0.0}, 0.5}, Variant::Standard);
  const Profile q = build_profile(tl, {0.0, 1.0, 2});
  CHECK(std::abs(q.Ci[0]) == 0.0);
  CHECK(std::abs(q.Ce[0]) == doctest::Approx(std::abs(tl.b_e)));
  CHECK(std::abs(q.Cf[0]) == doctest::Approx(std::abs(tl.b_f)));
}

TEST_CASE("amplitude contrast") {
  const auto contrast = [](double m) {
    const SolutionCoefficients c = solve_lambda_superposed(Modulus(m), 1.0, kLambda, 3);
    return amplitude_contrast(build_profile(c, default_grid(c)));
  };
  const AmplitudeContrast a7 = contrast(0.7);
  const AmplitudeContrast a3 = contrast(0.3);
  CHECK(a7.ratioDC > 1.0);
  CHECK(a7.ratioDS > 1.0);
  CHECK(a3.ratioDC > a7.ratioDC);
  CHECK(a3.ratioDS > a7.ratioDS);

  const SolutionCoefficients tl =
      solve_n_pure_cnoidal(1.0, MediumSpec::two_level(1.0), {complex{1.0, 0.0}, 0.5}, Variant::Standard);
  const AmplitudeContrast one = amplitude_contrast(build_profile(tl, default_grid(tl)));
  CHECK(one.ratioDC == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(one.ratioDS == doctest::Approx(1.0).epsilon(1e-6));

  Profile flat;
  flat.waveD = {1.0, 1.0};
  flat.waveC = {0.5, 0.2};
  flat.waveS = {0.0, 0.0};
  try {
    amplitude_contrast(flat);
    FAIL("expected UndefinedRatio");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedRatio);
  }
}
