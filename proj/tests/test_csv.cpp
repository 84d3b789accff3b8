#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cnoidal/constraints.hpp"
#include "cnoidal/csv.hpp"
#include "cnoidal/error.hpp"
#include "oracles.hpp"

using namespace cnoidal;

namespace {

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

TEST_CASE("doubles survive formatting") {
  auto gen = oracle::rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(u(gen)) % 40);
    CHECK(parse(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(parse(format_double(std::numeric_limits<double>::denorm_min())) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("profile table header") {
  const SolutionCoefficients c = solve_lambda_superposed(Modulus(0.7), 1.0, MediumSpec::lambda(1.0, 1.0), 3);
  const XGrid g = default_grid(c, 64);
  const Table t = profile_table(build_profile(c, g), ode_residual(c, g));
  REQUIRE(t.header.size() == 17);
  CHECK(t.header.front() == "X");
  CHECK(t.header[1] == "Ci_re");
  CHECK(t.header[14] == "OmegaV_im");
  CHECK(t.header[15] == "norm");
  CHECK(t.header[16] == "residual");
  CHECK(t.rows.size() == 64);
}

TEST_CASE("profile round trip") {
  const double x = fraction_x_of_m(Modulus(0.5), 5);
  for (const SolutionCoefficients& c :
       {solve_lambda_superposed(Modulus(0.7), 1.0, MediumSpec::lambda(1.0, 1.0), 3),
        solve_n_superposed(2.0, MediumSpec::n_system(0.99, 1.0, 0.99 - x), 5)}) {
    const XGrid g = default_grid(c);
    const Profile p = build_profile(c, g);
    const ResidualReport r = ode_residual(c, g);
    std::stringstream ss;
    write_table(ss, profile_table(p, r));
    const Table back = read_table(ss);
    const RoundTrip rt = recertify(back, c);
    CHECK(std::abs(rt.probabilityDeviation - probability_deviation(p)) < 1e-12);
    CHECK(std::abs(rt.residual.max_relative() - r.max_relative()) < 1e-12);
    CHECK(rt.channelMismatch < 1e-12);
    CHECK(rt.residualMismatch < 1e-12);
  }
}

TEST_CASE("malformed input") {
  std::stringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_table(ragged), Error);
  std::stringstream bad("a,b\n1,zz\n");
  CHECK_THROWS_AS(read_table(bad), Error);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_table(empty), Error);
}
