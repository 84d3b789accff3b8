#include "cnoidal/roots.hpp"

#include <cmath>

#include "cnoidal/error.hpp"

namespace cnoidal {

double bisect(const ScalarFunction& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi)) {
    throw Error(ErrorKind::NoBracket, "no sign change on [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
  }
  // 200 halvings exhaust the resolution of any double bracket.
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool is_strictly_monotone(const ScalarFunction& f, double lo, double hi, int n,
                          Monotonicity direction) {
  if (n < 2) return true;
  double prev = f(lo);
  for (int k = 1; k < n; ++k) {
    const double x = (k == n - 1) ? hi : lo + (hi - lo) * k / (n - 1);
    const double cur = f(x);
    const bool ok = direction == Monotonicity::Increasing ? cur > prev : cur < prev;
    if (!ok) return false;
    prev = cur;
  }
  return true;
}

Minimum golden_section_min(const ScalarFunction& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  Minimum best{c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

}  // namespace cnoidal
