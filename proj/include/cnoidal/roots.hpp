#pragma once

// Bracketing scalar solvers shared by the constraint inversions.

#include <functional>

namespace cnoidal {

using ScalarFunction = std::function<double(double)>;

enum class Monotonicity { Increasing, Decreasing };

/// Bisection on [lo, hi] until the bracket is narrower than tol.  Requires
/// f(lo) and f(hi) to differ in sign (a zero at either end is accepted);
/// throws NoBracket otherwise.
double bisect(const ScalarFunction& f, double lo, double hi, double tol);

/// Tabulates f at n equally spaced points of [lo, hi] and reports whether the
/// samples are strictly ordered in the given direction.
bool is_strictly_monotone(const ScalarFunction& f, double lo, double hi, int n,
                          Monotonicity direction);

struct Minimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
Minimum golden_section_min(const ScalarFunction& f, double lo, double hi, double tol);

}  // namespace cnoidal
