#include "entnorm/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bisect.hpp"
#include "entnorm/error.hpp"
#include "entnorm/simplex.hpp"

namespace entnorm {

namespace {

constexpr double kEntropyTolerance = 1e-9;

double ln_n(int n) { return std::log(static_cast<double>(n)); }

void require_finite_order(double alpha, const char* what) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw DomainError(std::string(what) + ": order must be positive and finite, got " +
                      std::to_string(alpha));
  }
}

// (e^x - 1 - x) / x, accurate for small |x|.
double expm1_excess_ratio(double x) {
  if (std::abs(x) < 1e-4) return x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  return (std::expm1(x) - x) / x;
}

// g at z = 1 + w. Written as (1 - alpha) * ((A - 1) B + (B - 1)) with
// A = ((n-1) + z^alpha) / ((n-1) + z) and B = (z^(1-alpha) - 1) / ((1-alpha) ln z),
// which keeps full relative precision as z -> 1 and as alpha -> 1.
double g_from_offset(int n, double w, double alpha) {
  const double z = 1.0 + w;
  const double log_z = std::log1p(w);
  const double a_minus_1 = z * std::expm1((alpha - 1.0) * log_z) / ((n - 1) + z);
  const double x = (1.0 - alpha) * log_z;
  const double b_minus_1 = expm1_excess_ratio(x);
  const double b = 1.0 + b_minus_1;
  return (1.0 - alpha) * (a_minus_1 * b + b_minus_1);
}

}  // namespace

double entropy_v(int n, double p) {
  detail::require_alphabet(n, 2, "entropy_v");
  p = detail::clamp_to_domain(p, 0.0, 1.0 / n, kDomainTolerance, "entropy_v");
  const double tail = (n - 1) * p;
  const double head = 1.0 - tail;
  const double head_term = head <= 0.0 ? 0.0 : -head * std::log1p(-tail);
  return head_term + (n - 1) * detail::neg_x_log_x(p);
}

double entropy_w(int n, double p) {
  detail::require_alphabet(n, 2, "entropy_w");
  p = detail::clamp_to_domain(p, 1.0 / n, 1.0, kDomainTolerance, "entropy_w");
  int full = std::min(detail::w_full_count(p), n);
  double rest = 1.0 - full * p;
  if (rest < 0.0) {
    --full;
    rest = 1.0 - full * p;
  }
  return full * detail::neg_x_log_x(p) + detail::neg_x_log_x(rest);
}

double inv_entropy_v(int n, double h) {
  detail::require_alphabet(n, 2, "inv_entropy_v");
  const double top = ln_n(n);
  h = detail::clamp_to_domain(h, 0.0, top, kEntropyTolerance, "inv_entropy_v");
  if (h == 0.0) return 0.0;
  // The curve is flat at 1/n; snap instead of bisecting an ill-conditioned root.
  if (h >= std::min(top, entropy_v(n, 1.0 / n))) return 1.0 / n;
  return detail::invert_monotone([n](double p) { return entropy_v(n, p); }, h, 0.0, 1.0 / n,
                                 true);
}

double inv_entropy_w(int n, double h) {
  detail::require_alphabet(n, 2, "inv_entropy_w");
  const double top = ln_n(n);
  h = detail::clamp_to_domain(h, 0.0, top, kEntropyTolerance, "inv_entropy_w");
  if (h == 0.0) return 1.0;
  if (h >= std::min(top, entropy_w(n, 1.0 / n))) return 1.0 / n;
  return detail::invert_monotone([n](double p) { return entropy_w(n, p); }, h, 1.0 / n, 1.0,
                                 false);
}

double norm_v(int n, double p, double alpha) {
  detail::require_alphabet(n, 2, "norm_v");
  p = detail::clamp_to_domain(p, 0.0, 1.0 / n, kDomainTolerance, "norm_v");
  const double head = 1.0 - (n - 1) * p;
  if (std::isinf(alpha)) return head;
  require_finite_order(alpha, "norm_v");
  // head >= p on [0, 1/n], so scaling by head is safe.
  const double ratio = p / head;
  return head * std::pow(1.0 + (n - 1) * std::pow(ratio, alpha), 1.0 / alpha);
}

double norm_w(int n, double p, double alpha) {
  detail::require_alphabet(n, 2, "norm_w");
  p = detail::clamp_to_domain(p, 1.0 / n, 1.0, kDomainTolerance, "norm_w");
  if (std::isinf(alpha)) return p;
  require_finite_order(alpha, "norm_w");
  int full = std::min(detail::w_full_count(p), n);
  double rest = 1.0 - full * p;
  if (rest < 0.0) {
    --full;
    rest = 1.0 - full * p;
  }
  const double tail = rest > 0.0 ? std::pow(rest / p, alpha) : 0.0;
  return p * std::pow(full + tail, 1.0 / alpha);
}

CurvePoint v_curve_at(int n, double alpha, double h) {
  const double p = inv_entropy_v(n, h);
  return {entropy_v(n, p), norm_v(n, p, alpha)};
}

CurvePoint w_curve_at(int n, double alpha, double h) {
  const double p = inv_entropy_w(n, h);
  return {entropy_w(n, p), norm_w(n, p, alpha)};
}

double dnorm_dh_v(int n, double p, double alpha) {
  detail::require_alphabet(n, 2, "dnorm_dh_v");
  require_finite_order(alpha, "dnorm_dh_v");
  if (alpha == 1.0) throw DomainError("dnorm_dh_v: order 1 is excluded");
  if (!(p > 0.0 && p < 1.0 / n)) {
    throw DomainError("dnorm_dh_v: p must lie strictly inside (0, 1/n), got " +
                      std::to_string(p));
  }
  const double head = 1.0 - (n - 1) * p;
  const double norm = norm_v(n, p, alpha);
  // (sum)^(1/alpha - 1) * x^(alpha - 1) == (x / norm)^(alpha - 1)
  const double numer = std::pow(p / norm, alpha - 1.0) - std::pow(head / norm, alpha - 1.0);
  const double denom = std::log1p(-(n - 1) * p) - std::log(p);
  return numer / denom;
}

double g_sign_fn(int n, double p, double alpha) {
  detail::require_alphabet(n, 2, "g_sign_fn");
  const double upper = 1.0 / (n - 1);
  if (!(p > 0.0 && p < upper)) {
    throw DomainError("g_sign_fn: p must lie inside (0, 1/(n-1)), got " + std::to_string(p));
  }
  const double offset = (1.0 - n * p) / p;
  if (offset == 0.0) throw DomainError("g_sign_fn: pole at p = 1/n");
  return g_from_offset(n, offset, alpha);
}

double g_sign_fn_z(int n, double z, double alpha) {
  detail::require_alphabet(n, 2, "g_sign_fn_z");
  if (!(z > 0.0) || z == 1.0 || std::isinf(z)) {
    throw DomainError("g_sign_fn_z: z must be positive, finite and != 1, got " +
                      std::to_string(z));
  }
  return g_from_offset(n, z - 1.0, alpha);
}

double g_sign_fn_direct(int n, double p, double alpha) {
  detail::require_alphabet(n, 2, "g_sign_fn_direct");
  if (!(p > 0.0 && p < 1.0 / (n - 1)) || p == 1.0 / n) {
    throw DomainError("g_sign_fn_direct: p outside (0, 1/(n-1)) \\ {1/n}");
  }
  const double m = n - 1;
  const double q = 1.0 - m * p;
  const double numer = 1.0 - 2.0 * m * p + m * std::pow(p, alpha) * std::pow(q, 1.0 - alpha) -
                       std::pow(p, 1.0 - alpha) * std::pow(q, alpha);
  return (alpha - 1.0) + numer / std::log(q / p);
}

double g_zero(int n, double alpha, double lo, double hi) {
  const double g_lo = g_sign_fn(n, lo, alpha);
  const double g_hi = g_sign_fn(n, hi, alpha);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw NumericalError("g has no sign change on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] for n=" + std::to_string(n) +
                         ", alpha=" + std::to_string(alpha) + " (g(lo)=" + std::to_string(g_lo) +
                         ", g(hi)=" + std::to_string(g_hi) + ")");
  }
  return detail::bisect([&](double p) { return g_sign_fn(n, p, alpha); }, lo, hi, g_lo > 0.0);
}

bool order_has_tangent(double alpha) {
  return std::isfinite(alpha) && alpha >= 0.5 && alpha != 1.0;
}

InflectionSolution inflection_chi(int n, double alpha) {
  detail::require_alphabet(n, 3, "inflection_chi");
  if (!order_has_tangent(alpha)) {
    throw UnsupportedOrder("unsupported order " + std::to_string(alpha) +
                           ": the inflection point is available for alpha in [1/2, 1) or (1, inf)");
  }
  const double lo = 1.0 / (static_cast<double>(n) * (n - 1));
  // g vanishes at p = 1/n itself; step back until the positive side is visible.
  double hi = 0.0;
  for (double gap = 1e-3; gap >= 1e-13; gap *= 0.1) {
    hi = (1.0 - gap) / n;
    if (g_sign_fn(n, hi, alpha) > 0.0) break;
  }
  const double pi_p = g_zero(n, alpha, lo, hi);
  return {n, alpha, entropy_v(n, pi_p), pi_p};
}

double tangent_residual(int n, double p, double alpha) {
  const double slope = dnorm_dh_v(n, p, alpha);
  return (ln_n(n) - entropy_v(n, p)) * slope - (uniform_norm(n, alpha) - norm_v(n, p, alpha));
}

namespace {

TangentSolution binary_tangent(double alpha) {
  require_finite_order(alpha, "tangent_point");
  if (alpha == 1.0) throw DomainError("tangent_point: order 1 has no tangent segment");
  return {2, alpha, 0.5, std::log(2.0), uniform_norm(2, alpha), std::nullopt};
}

void require_tangent_order(double alpha) {
  if (!order_has_tangent(alpha)) {
    throw UnsupportedOrder("unsupported order " + std::to_string(alpha) +
                           ": for n >= 3 the upper bound is available for alpha in [1/2, 1) or "
                           "(1, inf)");
  }
}

}  // namespace

TangentSolution solve_tangent_generic(int n, double alpha) {
  detail::require_alphabet(n, 2, "tangent_point");
  if (n == 2) return binary_tangent(alpha);
  require_tangent_order(alpha);

  const InflectionSolution inflection = inflection_chi(n, alpha);
  auto residual = [&](double p) { return tangent_residual(n, p, alpha); };

  const double hi = inflection.pi_p;
  const double r_hi = residual(hi);
  double lo = 1e-14;
  double r_lo = residual(lo);
  while (!(r_lo > 0.0) && lo > 1e-30) {
    lo *= 1e-2;
    r_lo = residual(lo);
  }
  if (!(r_lo > 0.0) || !(r_hi < 0.0)) {
    throw NumericalError("tangent_point: no sign change for n=" + std::to_string(n) +
                         ", alpha=" + std::to_string(alpha) + " (F(" + std::to_string(lo) +
                         ")=" + std::to_string(r_lo) + ", F(pi)=" + std::to_string(r_hi) + ")");
  }
  const double p_star = detail::bisect(residual, lo, hi, true);
  return {n, alpha, p_star, entropy_v(n, p_star), norm_v(n, p_star, alpha), inflection};
}

TangentSolution tangent_point(int n, double alpha) {
  detail::require_alphabet(n, 2, "tangent_point");
  if (n == 2) return binary_tangent(alpha);
  require_tangent_order(alpha);
  if (alpha == 0.5) {
    const double p_star = 1.0 / (static_cast<double>(n) * (n - 1));
    const double h_star = ln_n(n) - (1.0 - 2.0 / n) * std::log(n - 1.0);
    const double norm_star = 4.0 * (n - 1.0) / n;
    return {n, alpha, p_star, h_star, norm_star, inflection_chi(n, alpha)};
  }
  return solve_tangent_generic(n, alpha);
}

}  // namespace entnorm
