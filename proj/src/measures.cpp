#include "entnorm/measures.hpp"

#include <cmath>
#include <string>

#include "entnorm/error.hpp"

namespace entnorm {

namespace {

double ln_n(int n) { return std::log(static_cast<double>(n)); }

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + ": order must be positive, got " + std::to_string(x));
  }
}

std::optional<double> map_opt(const std::optional<double>& x, auto&& f) {
  if (!x) return std::nullopt;
  return f(*x);
}

}  // namespace

JointDist::JointDist(ProbVector p_y, std::vector<ProbVector> rows)
    : p_y_(std::move(p_y)), rows_(std::move(rows)) {
  if (rows_.empty()) throw DomainError("joint distribution needs at least one row");
  if (rows_.size() != p_y_.size()) {
    throw DomainError("joint distribution has " + std::to_string(p_y_.size()) +
                      " marginal entries but " + std::to_string(rows_.size()) + " rows");
  }
  for (const auto& row : rows_) {
    if (row.size() != rows_.front().size()) {
      throw DomainError("conditional rows must share one alphabet size");
    }
  }
}

Channel::Channel(std::vector<ProbVector> transitions) : transitions_(std::move(transitions)) {
  if (transitions_.empty()) throw DomainError("channel needs at least one input symbol");
  for (const auto& row : transitions_) {
    if (row.size() != transitions_.front().size()) {
      throw DomainError("transition rows must share one output alphabet");
    }
  }
}

double cond_shannon(const JointDist& j) {
  double h = 0.0;
  for (std::size_t y = 0; y < j.rows().size(); ++y) h += j.p_y()[y] * shannon_entropy(j.rows()[y]);
  return h;
}

double expected_alpha_norm(const JointDist& j, Order alpha) {
  double acc = 0.0;
  for (std::size_t y = 0; y < j.rows().size(); ++y) {
    if (j.p_y()[y] > 0.0) acc += j.p_y()[y] * alpha_norm(j.rows()[y], alpha);
  }
  return acc;
}

double expected_alpha_norm(const JointDist& j, double alpha) {
  return expected_alpha_norm(j, Order(alpha));
}

double renyi_from_norm(double alpha, double norm) {
  require_positive(alpha, "renyi_from_norm");
  if (alpha == 1.0) throw DomainError("renyi_from_norm: order 1 is the Shannon limit");
  // Adding +0.0 turns a negative zero at norm = 1 into +0.
  if (std::isinf(alpha)) return -std::log(norm) + 0.0;
  return alpha / (1.0 - alpha) * std::log(norm) + 0.0;
}

double rnorm_from_norm(double r, double norm) {
  require_positive(r, "rnorm_from_norm");
  if (r == 1.0 || std::isinf(r)) throw DomainError("rnorm_from_norm: R must be finite and != 1");
  return r / (r - 1.0) * (1.0 - norm);
}

double cond_renyi(const JointDist& j, double alpha) {
  require_positive(alpha, "cond_renyi");
  if (alpha == 1.0) return cond_shannon(j);
  return renyi_from_norm(alpha, expected_alpha_norm(j, Order(alpha)));
}

double cond_rnorm(const JointDist& j, double r) {
  require_positive(r, "cond_rnorm");
  if (r == 1.0 || std::isinf(r)) throw DomainError("cond_rnorm: R must be finite and != 1");
  return rnorm_from_norm(r, expected_alpha_norm(j, Order(r)));
}

JointDist joint_from_channel_uniform(const Channel& c) {
  const int n = c.n_in();
  std::vector<double> p_y;
  std::vector<ProbVector> rows;
  for (int y = 0; y < c.n_out(); ++y) {
    std::vector<double> column(static_cast<std::size_t>(n));
    double mass = 0.0;
    for (int x = 0; x < n; ++x) {
      column[static_cast<std::size_t>(x)] = c.transitions()[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      mass += column[static_cast<std::size_t>(x)];
    }
    if (!(mass > 0.0)) continue;
    for (double& v : column) v /= mass;
    p_y.push_back(mass / n);
    rows.emplace_back(std::move(column));
  }
  double total = 0.0;
  for (double v : p_y) total += v;
  for (double& v : p_y) v /= total;
  return JointDist(ProbVector(std::move(p_y)), std::move(rows));
}

double arimoto_mutual_uniform(const Channel& c, double alpha) {
  return ln_n(c.n_in()) - cond_renyi(joint_from_channel_uniform(c), alpha);
}

double gallager_e0_uniform(const Channel& c, double rho) {
  if (!(rho > -1.0) || std::isinf(rho)) {
    throw DomainError("gallager_e0_uniform: rho must lie in (-1, inf), got " + std::to_string(rho));
  }
  const double s = 1.0 / (1.0 + rho);
  const double weight = 1.0 / c.n_in();
  double total = 0.0;
  for (int y = 0; y < c.n_out(); ++y) {
    double inner = 0.0;
    for (const auto& row : c.transitions()) {
      const double t = row[static_cast<std::size_t>(y)];
      if (t > 0.0) inner += weight * std::pow(t, s);
    }
    if (inner > 0.0) total += std::pow(inner, 1.0 + rho);
  }
  return -std::log(total);
}

Interval renyi_bounds_given_h(int n, double alpha, double h) {
  require_positive(alpha, "renyi_bounds_given_h");
  if (alpha == 1.0) {
    const double hc = detail::clamp_to_domain(h, 0.0, ln_n(n), 1e-9, "renyi_bounds_given_h");
    return {hc, hc};
  }
  const BoundEnvelope env = envelope({n, alpha, h});
  auto f = [alpha](double x) { return renyi_from_norm(alpha, x); };
  if (alpha < 1.0) return {f(env.lower), map_opt(env.upper, f)};
  return {map_opt(env.upper, f), f(env.lower)};
}

Interval rnorm_bounds_given_h(int n, double r, double h) {
  require_positive(r, "rnorm_bounds_given_h");
  if (r == 1.0 || std::isinf(r)) throw DomainError("rnorm_bounds_given_h: R must be finite and != 1");
  const BoundEnvelope env = envelope({n, r, h});
  auto f = [r](double x) { return rnorm_from_norm(r, x); };
  if (r < 1.0) return {f(env.lower), map_opt(env.upper, f)};
  return {map_opt(env.upper, f), f(env.lower)};
}

Interval mutual_bounds_given_i(int n, double alpha, double i) {
  detail::require_alphabet(n, 2, "mutual_bounds_given_i");
  const double top = ln_n(n);
  i = detail::clamp_to_domain(i, 0.0, top, 1e-9, "mutual_bounds_given_i");
  const Interval h_alpha = renyi_bounds_given_h(n, alpha, top - i);
  auto to_mutual = [top](double x) { return top - x; };
  return {map_opt(h_alpha.hi, to_mutual), map_opt(h_alpha.lo, to_mutual)};
}

Interval e0_bounds_given_i(int n, double rho, double i) {
  detail::require_alphabet(n, 2, "e0_bounds_given_i");
  if (!(rho > -1.0) || std::isinf(rho)) {
    throw DomainError("e0_bounds_given_i: rho must lie in (-1, inf), got " + std::to_string(rho));
  }
  const double top = ln_n(n);
  i = detail::clamp_to_domain(i, 0.0, top, 1e-9, "e0_bounds_given_i");
  if (rho == 0.0) return {0.0, 0.0};
  if (rho == 1.0) {
    // Cutoff rate: E0(1) = ln n - ln E||P||_{1/2}.
    const double h = top - i;
    return {top - std::log(l_max_half(n, h)), top - std::log(l_min({n, 0.5, h}))};
  }
  const double alpha = 1.0 / (1.0 + rho);
  const Interval mutual = mutual_bounds_given_i(n, alpha, i);
  auto scale = [rho](double x) { return rho * x; };
  if (rho > 0.0) return {map_opt(mutual.lo, scale), map_opt(mutual.hi, scale)};
  return {map_opt(mutual.hi, scale), map_opt(mutual.lo, scale)};
}

}  // namespace entnorm
