#pragma once

// Tight bounds between the conditional Shannon entropy H(X|Y) and the expected
// norm E[||P_{X|Y}(.|Y)||_alpha] for an n-ary X.
//
// The lower envelope L_min is the chord through the uniform points
// (ln m, ||u_m||_alpha). The upper envelope L_max follows the v-curve up to the
// tangent point and continues along the tangent to (ln n, ||u_n||_alpha). For
// n >= 3 the upper envelope is only established for alpha in [1/2, 1) and
// (1, inf); for n = 2 it is the v-curve at every order.

#include <optional>
#include <utility>

#include "entnorm/curves.hpp"
#include "entnorm/simplex.hpp"

namespace entnorm {

/// A point (n, alpha, h) on a bound curve. h is clamped to [0, ln n] within
/// 1e-9 by the bound functions.
struct BoundQuery {
  int n;
  double alpha;
  double h;
};

struct BoundEnvelope {
  double lower;
  std::optional<double> upper;
};

/// Closed interval [lo, hi] whose ends may be unavailable.
struct Interval {
  std::optional<double> lo;
  std::optional<double> hi;
};

double l_min(const BoundQuery& q);
double l_max(const BoundQuery& q);
/// Upper envelope at alpha = 1/2 from its closed form.
double l_max_half(int n, double h);
BoundEnvelope envelope(const BoundQuery& q);

/// Whether the upper envelope is established at (n, alpha).
bool upper_envelope_available(int n, double alpha);

/// Tangent solution shared by all bound evaluations; computed once per (n, alpha).
const TangentSolution& cached_tangent(int n, double alpha);

struct NormSandwich {
  double lower_w;
  double upper_v;
};

/// Norms of the w- and v-distributions with the same entropy as p.
NormSandwich unconditional_sandwich(const ProbVector& p, double alpha);

/// Entropy range of n-ary distributions with ||p||_alpha = norm.
std::pair<double, double> entropy_bounds_given_norm_unconditional(int n, double alpha,
                                                                  double norm);

/// Range of H(X|Y) over joints with E[||P_{X|Y}||_alpha] = norm.
std::pair<double, double> cond_entropy_bounds_given_norm(int n, double alpha, double norm);

}  // namespace entnorm
