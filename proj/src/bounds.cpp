#include "entnorm/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "bisect.hpp"
#include "entnorm/error.hpp"

namespace entnorm {

namespace {

constexpr double kEntropyTolerance = 1e-9;
constexpr double kInverseTolerance = 1e-11;

double ln_n(int n) { return std::log(static_cast<double>(n)); }

double clamp_entropy(int n, double h, const char* what) {
  return detail::clamp_to_domain(h, 0.0, ln_n(n), kEntropyTolerance, what);
}

void require_positive_order(double alpha, const char* what) {
  if (!(alpha > 0.0)) {
    throw DomainError(std::string(what) + ": order must be positive, got " +
                      std::to_string(alpha));
  }
}

[[noreturn]] void throw_no_upper(int n, double alpha) {
  throw UnsupportedOrder("unsupported order " + std::to_string(alpha) + " for n=" +
                         std::to_string(n) +
                         ": the upper bound holds for alpha in [1/2, 1) or (1, inf) when n >= 3, "
                         "and for every alpha when n = 2");
}

double norm_range_clamp(int n, double alpha, double norm, const char* what) {
  const double at_uniform = uniform_norm(n, alpha);
  return detail::clamp_to_domain(norm, std::min(1.0, at_uniform), std::max(1.0, at_uniform),
                                 kDomainTolerance, what);
}

}  // namespace

bool upper_envelope_available(int n, double alpha) {
  if (!(alpha > 0.0)) return false;
  if (alpha == 1.0) return true;
  if (n == 2) return std::isfinite(alpha);
  return order_has_tangent(alpha);
}

const TangentSolution& cached_tangent(int n, double alpha) {
  using Key = std::pair<int, std::uint64_t>;
  static std::shared_mutex mutex;
  static std::map<Key, TangentSolution> cache;

  const Key key{n, std::bit_cast<std::uint64_t>(alpha)};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  TangentSolution solved = tangent_point(n, alpha);
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(solved)).first->second;
}

double l_min(const BoundQuery& q) {
  detail::require_alphabet(q.n, 2, "l_min");
  require_positive_order(q.alpha, "l_min");
  const double h = clamp_entropy(q.n, q.h, "l_min");
  if (q.alpha == 1.0) return 1.0;
  int m = static_cast<int>(std::floor(std::exp(h) + 1e-9));
  m = std::clamp(m, 1, q.n - 1);
  const double lo = std::log(static_cast<double>(m));
  const double hi = std::log(m + 1.0);
  const double lambda = (hi - h) / (hi - lo);
  return lambda * uniform_norm(m, q.alpha) + (1.0 - lambda) * uniform_norm(m + 1, q.alpha);
}

double l_max(const BoundQuery& q) {
  detail::require_alphabet(q.n, 2, "l_max");
  require_positive_order(q.alpha, "l_max");
  const double h = clamp_entropy(q.n, q.h, "l_max");
  if (q.alpha == 1.0) return 1.0;
  if (!upper_envelope_available(q.n, q.alpha)) throw_no_upper(q.n, q.alpha);
  if (q.n == 2) return norm_v(2, inv_entropy_v(2, h), q.alpha);

  const TangentSolution& t = cached_tangent(q.n, q.alpha);
  if (h <= t.h_star) return norm_v(q.n, inv_entropy_v(q.n, h), q.alpha);
  const double lambda = (ln_n(q.n) - h) / (ln_n(q.n) - t.h_star);
  return lambda * t.norm_star + (1.0 - lambda) * uniform_norm(q.n, q.alpha);
}

double l_max_half(int n, double h) {
  detail::require_alphabet(n, 2, "l_max_half");
  h = clamp_entropy(n, h, "l_max_half");
  const double h_star = ln_n(n) - (1.0 - 2.0 / n) * std::log(n - 1.0);
  if (h <= h_star) return norm_v(n, inv_entropy_v(n, h), 0.5);
  return n - (n - 2.0) * (ln_n(n) - h) / std::log(n - 1.0);
}

BoundEnvelope envelope(const BoundQuery& q) {
  BoundEnvelope env{l_min(q), std::nullopt};
  if (upper_envelope_available(q.n, q.alpha)) env.upper = l_max(q);
  return env;
}

NormSandwich unconditional_sandwich(const ProbVector& p, double alpha) {
  require_positive_order(alpha, "unconditional_sandwich");
  const int n = static_cast<int>(p.size());
  if (n == 1) return {1.0, 1.0};
  const double h = shannon_entropy(p);
  return {norm_w(n, inv_entropy_w(n, h), alpha), norm_v(n, inv_entropy_v(n, h), alpha)};
}

std::pair<double, double> entropy_bounds_given_norm_unconditional(int n, double alpha,
                                                                  double norm) {
  detail::require_alphabet(n, 2, "entropy_bounds_given_norm_unconditional");
  require_positive_order(alpha, "entropy_bounds_given_norm_unconditional");
  if (alpha == 1.0 || std::isinf(alpha)) {
    throw DomainError("entropy_bounds_given_norm_unconditional: order must be finite and != 1");
  }
  norm = norm_range_clamp(n, alpha, norm, "entropy_bounds_given_norm_unconditional");
  const bool below_one = alpha < 1.0;
  // Along v the norm rises with p when alpha < 1; along w it falls.
  const double p_v = detail::invert_monotone([&](double p) { return norm_v(n, p, alpha); }, norm,
                                             0.0, 1.0 / n, below_one);
  const double p_w = detail::invert_monotone([&](double p) { return norm_w(n, p, alpha); }, norm,
                                             1.0 / n, 1.0, !below_one);
  const double h_v = entropy_v(n, p_v);
  const double h_w = entropy_w(n, p_w);
  return below_one ? std::pair{h_v, h_w} : std::pair{h_w, h_v};
}

std::pair<double, double> cond_entropy_bounds_given_norm(int n, double alpha, double norm) {
  detail::require_alphabet(n, 2, "cond_entropy_bounds_given_norm");
  require_positive_order(alpha, "cond_entropy_bounds_given_norm");
  if (alpha == 1.0) {
    throw DomainError("cond_entropy_bounds_given_norm: at order 1 the norm is constant");
  }
  if (!upper_envelope_available(n, alpha)) throw_no_upper(n, alpha);
  norm = norm_range_clamp(n, alpha, norm, "cond_entropy_bounds_given_norm");

  const bool increasing = alpha < 1.0;
  const double top = ln_n(n);
  if (norm == 1.0) return {0.0, 0.0};
  if (norm == uniform_norm(n, alpha)) return {top, top};
  auto invert = [&](auto&& bound) {
    return detail::invert_monotone([&](double h) { return bound(BoundQuery{n, alpha, h}); },
                                   norm, 0.0, top, increasing, kInverseTolerance);
  };
  const double via_min = invert(l_min);
  const double via_max = invert(l_max);
  // L_max >= L_min, so it reaches a given norm first when both increase.
  return increasing ? std::pair{via_max, via_min} : std::pair{via_min, via_max};
}

}  // namespace entnorm
