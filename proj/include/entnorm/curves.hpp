#pragma once

// Entropy and norm along the v_n and w_n families, their inverses, the slope
// of the v-curve in the entropy-norm plane, the curvature sign function g, the
// inflection point of the v-curve and the tangent point from the uniform
// endpoint.

#include <optional>

namespace entnorm {

/// A point (H, ||p||_alpha) of the entropy-norm plane.
struct CurvePoint {
  double h;
  double norm;
};

/// Inflection of the v-curve: g(n, pi_p, alpha) = 0 and chi = H_v(pi_p).
struct InflectionSolution {
  int n;
  double alpha;
  double chi;
  double pi_p;
};

/// Point p_star where the tangent to the v-curve passes through the uniform
/// endpoint (ln n, n^(1/alpha - 1)).
struct TangentSolution {
  int n;
  double alpha;
  double p_star;
  double h_star;
  double norm_star;
  /// Inflection data; absent for n = 2, where the v-curve is concave.
  std::optional<InflectionSolution> inflection;
};

double entropy_v(int n, double p);
double entropy_w(int n, double p);
double inv_entropy_v(int n, double h);
double inv_entropy_w(int n, double h);

/// ||v_n(p)||_alpha and ||w_n(p)||_alpha evaluated without building vectors.
double norm_v(int n, double p, double alpha);
double norm_w(int n, double p, double alpha);

/// Points of the two boundary curves of the unconditional region at entropy h.
CurvePoint v_curve_at(int n, double alpha, double h);
CurvePoint w_curve_at(int n, double alpha, double h);

/// d||v_n(p)||_alpha / dH_v(p) for 0 < p < 1/n.
double dnorm_dh_v(int n, double p, double alpha);

/// Sign function g(n, p, alpha); sign(g) = sign of the second derivative of the
/// v-curve norm in entropy coordinates. 0 < p < 1/(n-1), p != 1/n.
double g_sign_fn(int n, double p, double alpha);
/// g in the parametrization z = (1 - (n-1)p) / p, z > 0, z != 1.
double g_sign_fn_z(int n, double z, double alpha);
/// Literal rational form of g in p. Loses precision near p = 1/n and
/// overflows for small p and large alpha; g_sign_fn is the robust entry point.
double g_sign_fn_direct(int n, double p, double alpha);

/// Unique zero of g(n, ., alpha) inside (lo, hi), by sign-bracketed bisection.
double g_zero(int n, double alpha, double lo, double hi);

InflectionSolution inflection_chi(int n, double alpha);

/// Tangent point; closed forms for n = 2 and alpha = 1/2.
TangentSolution tangent_point(int n, double alpha);
/// Same, but always through the bisection solver (no closed forms for n >= 3).
TangentSolution solve_tangent_generic(int n, double alpha);
/// Residual (ln n - H_v(p)) * dN/dH - (||u_n|| - ||v_n(p)||) of the tangency
/// condition.
double tangent_residual(int n, double p, double alpha);

/// True when alpha is in [1/2, 1) or (1, inf), the orders with an inflection
/// analysis for n >= 3.
bool order_has_tangent(double alpha);

}  // namespace entnorm
