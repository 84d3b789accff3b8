#include <doctest.h>

#include <cmath>
#include <vector>

#include "cnoidal/error.hpp"
#include "cnoidal/superposition.hpp"
#include "oracles.hpp"

using namespace cnoidal;

namespace {

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) xs[k] = lo + (hi - lo) * k / (n - 1);
  return xs;
}

}  // namespace

TEST_CASE("term count") {
  for (int p : {1, 3, 5, 7, 9}) CHECK_NOTHROW(require_term_count(p));
  for (int p : {0, 2, 4, 11, -1}) CHECK_THROWS_AS(require_term_count(p), Error);
}

TEST_CASE("superposed_eval trivial cases") {
  for (double x : {-1.0, 0.0, 0.7, 3.0}) {
    CHECK(superposed_eval(SuperposedWave(WaveKind::Dn, 3, Modulus(0.0)), x) == doctest::Approx(3.0));
    CHECK(std::abs(superposed_eval(SuperposedWave(WaveKind::Sn, 3, Modulus(0.0)), x)) < 1e-14);
  }
  const LandenParams lp = landen_params(Modulus(0.7), 3);
  CHECK(std::abs(superposed_eval(SuperposedWave(WaveKind::Dn, 3, Modulus(0.7)), 0.0) - lp.alpha) < 1e-14);
}

TEST_CASE("superposed sums against boost") {
  for (int p : {3, 5, 7}) {
    for (double m : {0.2, 0.6, 0.9}) {
      const SuperposedBasis b(Modulus(m), p);
      CHECK(std::abs(b.shift() - 4.0 * oracle::K_quadrature(m) / p) < 1e-12);
      for (double x : uniform(-3.0, 6.0, 37)) {
        const SuperposedSample s = b(x);
        const oracle::Triple o = oracle::superposed(x, m, p);
        CHECK(std::abs(s.s - o.sn) < 1e-11);
        CHECK(std::abs(s.c - o.cn) < 1e-11);
        CHECK(std::abs(s.d - o.dn) < 1e-11);
      }
    }
  }
}

TEST_CASE("superposed derivative relations") {
  for (int p : {3, 5, 9}) {
    const double m = 0.55;
    const SuperposedBasis b(Modulus(m), p);
    for (double x : uniform(0.0, 4.0, 21)) {
      const SuperposedSample s = b(x);
      // cross terms cancel for odd p
      CHECK(std::abs(s.ds - s.c * s.d) < 1e-11);
      CHECK(std::abs(s.dc + s.s * s.d) < 1e-11);
      CHECK(std::abs(s.dd + m * s.s * s.c) < 1e-11);
      // against numerical differentiation of the oracle sums
      const double h = 1e-3;
      const auto f = [&](double u) { return std::complex<double>(oracle::superposed(u, m, p).dn, 0.0); };
      CHECK(std::abs(oracle::derivative(f, x, h).real() - s.dd) < 1e-9);
    }
  }
}

TEST_CASE("superposed periods") {
  const SuperposedBasis b(Modulus(0.8), 3);
  for (double x : uniform(0.0, 3.0, 11)) {
    const SuperposedSample a = b(x);
    const SuperposedSample c = b(x + b.period());
    const SuperposedSample d = b(x + 0.5 * b.period());
    CHECK(std::abs(a.s - c.s) < 1e-12);
    CHECK(std::abs(a.c - c.c) < 1e-12);
    CHECK(std::abs(a.d - d.d) < 1e-12);
  }
}

TEST_CASE("identity residuals") {
  const auto xs = uniform(0.0, 4.0 * oracle::K_quadrature(0.7) / 3.0, 1000);
  CHECK(identity_residuals(Modulus(0.0), 3, uniform(0.0, 7.0, 100)).max() < 1e-13);
  CHECK(identity_residuals(Modulus(0.7), 3, xs).max() < 1e-10);
  CHECK(identity_residuals(Modulus(0.5), 5, uniform(0.0, 5.0, 1000)).max() < 1e-10);
  // even p: the half-period shift sends sn and cn to minus themselves, so the sums vanish
  const double K = oracle::K_quadrature(0.5);
  double worst = 0.0;
  for (double x : uniform(0.1, 3.0, 50)) {
    const auto a = oracle::jacobi(x, 0.5);
    const auto b = oracle::jacobi(x + 2.0 * K, 0.5);
    worst = std::max({worst, std::abs(a.sn + b.sn), std::abs(a.cn + b.cn)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("landen parameters") {
  const LandenParams zero = landen_params(Modulus(0.0), 3);
  CHECK(zero.alpha == doctest::Approx(3.0));
  CHECK(std::abs(zero.beta) < 1e-14);
  CHECK(std::abs(zero.mTilde) < 1e-14);
  CHECK(landen_params(Modulus(1.0 - 1e-12), 3).mTilde > 0.99);
  for (double m : {0.1, 0.3, 0.7, 0.9}) {
    for (int p : {3, 5, 7, 9}) {
      const LandenParams lp = landen_params(Modulus(m), p);
      CAPTURE(m);
      CAPTURE(p);
      CHECK(lp.alpha > 0.0);
      CHECK(lp.mTilde >= 0.0);
      CHECK(lp.mTilde <= m);
      CHECK(std::abs(m * lp.beta * lp.beta - lp.alpha * lp.alpha * lp.mTilde) < 1e-10);
    }
    // closed form and period matching agree at p = 3
    const LandenParams lp = landen_params(Modulus(m), 3);
    CHECK(std::abs(landen_modulus_by_period(Modulus(m), 3, lp.alpha) - lp.mTilde) < 1e-12);
  }
}

TEST_CASE("landen residuals") {
  CHECK(landen_residual(Modulus(0.0), 3, uniform(0.0, 5.0, 100)).max() < 1e-13);
  for (double m : {0.3, 0.7}) {
    CHECK(landen_residual(Modulus(m), 3, uniform(0.0, 4.0 * oracle::K_quadrature(m), 1000)).max() < 1e-9);
  }
  for (int p : {5, 7}) {
    CHECK(landen_residual(Modulus(0.6), p, uniform(0.0, 6.0, 1000)).max() < 1e-9);
  }
  // independent check of the transformed form with boost at m~
  const double m = 0.7;
  const LandenParams lp = landen_params(Modulus(m), 3);
  for (double x : uniform(0.0, 5.0, 40)) {
    const oracle::Triple s = oracle::superposed(x, m, 3);
    const oracle::Triple t = oracle::jacobi(lp.alpha * x, lp.mTilde);
    CHECK(std::abs(s.dn - lp.alpha * t.dn) < 1e-10);
    CHECK(std::abs(s.cn - lp.beta * t.cn) < 1e-10);
    CHECK(std::abs(s.sn - lp.beta * t.sn) < 1e-10);
  }
}

TEST_CASE("degenerate basis") {
  CHECK_THROWS_AS(SuperposedBasis(Modulus(1.0), 3), Error);
}
