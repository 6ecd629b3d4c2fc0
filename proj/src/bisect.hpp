#pragma once

#include <cmath>

namespace entnorm::detail {

inline constexpr int kMaxBisectIterations = 200;

/// Bisection on [lo, hi] for a function whose sign at lo is `lo_sign`
/// (true = positive). Runs until the interval stops shrinking, its width is at
/// most `tol`, or the iteration cap is reached.
template <class F>
double bisect(F&& f, double lo, double hi, bool lo_positive, double tol = 0.0) {
  for (int it = 0; it < kMaxBisectIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= tol) break;
    const double fm = f(mid);
    if ((fm > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Solves f(x) = target for f increasing (or decreasing) on [lo, hi].
template <class F>
double invert_monotone(F&& f, double target, double lo, double hi, bool increasing,
                       double tol = 0.0) {
  auto shifted = [&](double x) { return f(x) - target; };
  // Below the root an increasing function is negative.
  return bisect(shifted, lo, hi, !increasing, tol);
}

}  // namespace entnorm::detail
