#include "entnorm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entnorm/error.hpp"

namespace entnorm {

namespace detail {

int w_full_count(double p) { return static_cast<int>(std::floor(1.0 / p + 1e-9)); }

double neg_x_log_x(double x) { return x < 1e-300 ? 0.0 : -x * std::log(x); }

double clamp_to_domain(double x, double lo, double hi, double tol, const char* what) {
  if (std::isnan(x) || x < lo - tol || x > hi + tol) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return std::clamp(x, lo, hi);
}

void require_alphabet(int n, int min_n, const char* what) {
  if (n < min_n) {
    throw DomainError(std::string(what) + ": alphabet size must be >= " + std::to_string(min_n) +
                      ", got " + std::to_string(n));
  }
}

}  // namespace detail

Order::Order(double alpha) : value_(alpha), infinite_(false) {
  if (std::isnan(alpha) || alpha <= 0.0) {
    throw DomainError("order must be positive, got " + std::to_string(alpha));
  }
  if (std::isinf(alpha)) {
    value_ = 0.0;
    infinite_ = true;
  }
}

double Order::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("probability vector must be non-empty");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("probability entry " + std::to_string(v) + " outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("probability entries sum to " + std::to_string(sum) + ", not 1");
  }
}

ProbVector ExtremalParam::materialize() const {
  switch (family) {
    case Family::V:
      return make_v(n, p);
    case Family::W:
      return make_w(n, p);
    case Family::U:
      break;
  }
  return make_uniform(n);
}

ProbVector make_uniform(int n) {
  detail::require_alphabet(n, 1, "make_uniform");
  return ProbVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

ProbVector make_v(int n, double p) {
  detail::require_alphabet(n, 2, "make_v");
  p = detail::clamp_to_domain(p, 0.0, 1.0 / n, kDomainTolerance, "make_v");
  std::vector<double> values(static_cast<std::size_t>(n), p);
  values[0] = std::max(0.0, 1.0 - (n - 1) * p);
  return ProbVector(std::move(values));
}

ProbVector make_w(int n, double p) {
  detail::require_alphabet(n, 2, "make_w");
  p = detail::clamp_to_domain(p, 1.0 / n, 1.0, kDomainTolerance, "make_w");
  const int full = std::min(detail::w_full_count(p), n);
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  std::fill_n(values.begin(), full, p);
  const double rest = 1.0 - full * p;
  if (rest > kSumTolerance) {
    if (full < n) values[static_cast<std::size_t>(full)] = rest;
  } else if (rest < 0.0 || (rest > 0.0 && full < n)) {
    // p is 1/full up to rounding; fold the residue into the last full entry.
    values[static_cast<std::size_t>(full - 1)] = 1.0 - (full - 1) * p;
  }
  return ProbVector(std::move(values));
}

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double x : p.values()) h += detail::neg_x_log_x(x);
  return h;
}

double alpha_norm(const ProbVector& p, Order alpha) {
  const auto values = p.values();
  const double peak = *std::max_element(values.begin(), values.end());
  if (alpha.is_infinite()) return peak;
  const double a = alpha.value();
  // Scale by the peak so large orders neither underflow nor overflow.
  double sum = 0.0;
  for (double x : values) {
    if (x > 0.0) sum += std::pow(x / peak, a);
  }
  return peak * std::pow(sum, 1.0 / a);
}

double alpha_norm(const ProbVector& p, double alpha) { return alpha_norm(p, Order(alpha)); }

double binary_entropy(double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
  }
  return detail::neg_x_log_x(x) + detail::neg_x_log_x(1.0 - x);
}

double alpha_log(double alpha, double x) {
  if (std::isnan(x) || x <= 0.0) {
    throw DomainError("alpha_log: argument must be positive, got " + std::to_string(x));
  }
  const double lx = std::log(x);
  if (alpha == 1.0) return lx;
  const double s = 1.0 - alpha;
  return std::expm1(s * lx) / s;
}

double uniform_norm(int m, double alpha) {
  detail::require_alphabet(m, 1, "uniform_norm");
  if (std::isinf(alpha)) return 1.0 / m;
  return std::pow(static_cast<double>(m), 1.0 / alpha - 1.0);
}

}  // namespace entnorm
