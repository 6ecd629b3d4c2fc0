#include "entnorm/entnorm.h"

#include <exception>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entnorm/error.hpp"
#include "entnorm/oracle.hpp"

struct entnorm_joint {
  entnorm::JointDist dist;
};

struct entnorm_channel {
  entnorm::Channel channel;
};

namespace {

thread_local std::string last_error;

entnorm_status fail(entnorm_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
entnorm_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return ENTNORM_OK;
  } catch (const entnorm::UnsupportedOrder& e) {
    return fail(ENTNORM_ERR_UNSUPPORTED_ORDER, e.what());
  } catch (const entnorm::DomainError& e) {
    return fail(ENTNORM_ERR_DOMAIN, e.what());
  } catch (const entnorm::NumericalError& e) {
    return fail(ENTNORM_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ENTNORM_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(ENTNORM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ENTNORM_ERR_INTERNAL, "unknown error");
  }
}

#define ENTNORM_REQUIRE(ptr)                                                      \
  do {                                                                            \
    if ((ptr) == nullptr) {                                                       \
      return fail(ENTNORM_ERR_INVALID_ARGUMENT, std::string(__func__) + ": " #ptr \
                                                " must not be null");             \
    }                                                                             \
  } while (0)

template <class F>
entnorm_status scalar(double* out, F&& f) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = f(); });
}

entnorm::ProbVector to_vector(const double* p, size_t n) {
  return entnorm::ProbVector(std::vector<double>(p, p + n));
}

void copy_out(const entnorm::ProbVector& v, double* out) {
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
}

entnorm_interval to_interval(const std::optional<double>& lo, const std::optional<double>& hi) {
  entnorm_interval r{0.0, 0.0, lo.has_value(), hi.has_value()};
  if (lo) r.lo = *lo;
  if (hi) r.hi = *hi;
  return r;
}

entnorm_tangent to_tangent(const entnorm::TangentSolution& t) {
  entnorm_tangent r{t.p_star, t.h_star, t.norm_star, t.inflection.has_value(), 0.0, 0.0};
  if (t.inflection) {
    r.chi = t.inflection->chi;
    r.pi_p = t.inflection->pi_p;
  }
  return r;
}

}  // namespace

extern "C" {

const char* entnorm_last_error(void) { return last_error.c_str(); }

const char* entnorm_status_name(entnorm_status status) {
  switch (status) {
    case ENTNORM_OK:
      return "ok";
    case ENTNORM_ERR_DOMAIN:
      return "domain error";
    case ENTNORM_ERR_UNSUPPORTED_ORDER:
      return "unsupported order";
    case ENTNORM_ERR_NUMERICAL:
      return "numerical error";
    case ENTNORM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case ENTNORM_ERR_OUT_OF_MEMORY:
      return "out of memory";
    case ENTNORM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

// ---- handles

entnorm_status entnorm_joint_create(const double* p_y, size_t y_size, const double* rows, size_t n,
                                    entnorm_joint** out) {
  ENTNORM_REQUIRE(p_y);
  ENTNORM_REQUIRE(rows);
  ENTNORM_REQUIRE(out);
  if (y_size == 0 || n == 0) return fail(ENTNORM_ERR_INVALID_ARGUMENT, "empty joint distribution");
  return guard([&] {
    std::vector<entnorm::ProbVector> conditional;
    conditional.reserve(y_size);
    for (size_t y = 0; y < y_size; ++y) {
      try {
        conditional.push_back(to_vector(rows + y * n, n));
      } catch (const entnorm::DomainError& e) {
        throw entnorm::DomainError("row " + std::to_string(y) + ": " + e.what());
      }
    }
    std::optional<entnorm::ProbVector> marginal;
    try {
      marginal.emplace(to_vector(p_y, y_size));
    } catch (const entnorm::DomainError& e) {
      throw entnorm::DomainError(std::string("marginal: ") + e.what());
    }
    *out = new entnorm_joint{entnorm::JointDist(std::move(*marginal), std::move(conditional))};
  });
}

void entnorm_joint_destroy(entnorm_joint* joint) { delete joint; }

entnorm_status entnorm_joint_dims(const entnorm_joint* joint, size_t* n, size_t* y_size) {
  ENTNORM_REQUIRE(joint);
  if (n) *n = static_cast<size_t>(joint->dist.n());
  if (y_size) *y_size = static_cast<size_t>(joint->dist.y_size());
  return ENTNORM_OK;
}

entnorm_status entnorm_joint_get(const entnorm_joint* joint, double* p_y, double* rows) {
  ENTNORM_REQUIRE(joint);
  if (p_y) copy_out(joint->dist.p_y(), p_y);
  if (rows) {
    const size_t n = static_cast<size_t>(joint->dist.n());
    size_t y = 0;
    for (const auto& row : joint->dist.rows()) copy_out(row, rows + n * y++);
  }
  return ENTNORM_OK;
}

entnorm_status entnorm_channel_create(const double* transitions, size_t n_in, size_t n_out,
                                      entnorm_channel** out) {
  ENTNORM_REQUIRE(transitions);
  ENTNORM_REQUIRE(out);
  if (n_in == 0 || n_out == 0) return fail(ENTNORM_ERR_INVALID_ARGUMENT, "empty channel");
  return guard([&] {
    std::vector<entnorm::ProbVector> rows;
    rows.reserve(n_in);
    for (size_t x = 0; x < n_in; ++x) {
      try {
        rows.push_back(to_vector(transitions + x * n_out, n_out));
      } catch (const entnorm::DomainError& e) {
        throw entnorm::DomainError("transition row " + std::to_string(x) + ": " + e.what());
      }
    }
    *out = new entnorm_channel{entnorm::Channel(std::move(rows))};
  });
}

void entnorm_channel_destroy(entnorm_channel* channel) { delete channel; }

entnorm_status entnorm_channel_dims(const entnorm_channel* channel, size_t* n_in, size_t* n_out) {
  ENTNORM_REQUIRE(channel);
  if (n_in) *n_in = static_cast<size_t>(channel->channel.n_in());
  if (n_out) *n_out = static_cast<size_t>(channel->channel.n_out());
  return ENTNORM_OK;
}

entnorm_status entnorm_channel_get(const entnorm_channel* channel, double* transitions) {
  ENTNORM_REQUIRE(channel);
  ENTNORM_REQUIRE(transitions);
  const size_t n_out = static_cast<size_t>(channel->channel.n_out());
  size_t x = 0;
  for (const auto& row : channel->channel.transitions()) copy_out(row, transitions + n_out * x++);
  return ENTNORM_OK;
}

// ---- probability vectors

entnorm_status entnorm_shannon_entropy(const double* p, size_t n, double* out) {
  ENTNORM_REQUIRE(p);
  return scalar(out, [&] { return entnorm::shannon_entropy(to_vector(p, n)); });
}

entnorm_status entnorm_alpha_norm(const double* p, size_t n, double alpha, double* out) {
  ENTNORM_REQUIRE(p);
  return scalar(out, [&] { return entnorm::alpha_norm(to_vector(p, n), entnorm::Order(alpha)); });
}

entnorm_status entnorm_alpha_log(double alpha, double x, double* out) {
  return scalar(out, [&] { return entnorm::alpha_log(alpha, x); });
}

entnorm_status entnorm_make_uniform(int n, double* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { copy_out(entnorm::make_uniform(n), out); });
}

entnorm_status entnorm_make_v(int n, double p, double* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { copy_out(entnorm::make_v(n, p), out); });
}

entnorm_status entnorm_make_w(int n, double p, double* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { copy_out(entnorm::make_w(n, p), out); });
}

// ---- extremal curves

entnorm_status entnorm_entropy_v(int n, double p, double* out) {
  return scalar(out, [&] { return entnorm::entropy_v(n, p); });
}

entnorm_status entnorm_entropy_w(int n, double p, double* out) {
  return scalar(out, [&] { return entnorm::entropy_w(n, p); });
}

entnorm_status entnorm_inv_entropy_v(int n, double h, double* out) {
  return scalar(out, [&] { return entnorm::inv_entropy_v(n, h); });
}

entnorm_status entnorm_inv_entropy_w(int n, double h, double* out) {
  return scalar(out, [&] { return entnorm::inv_entropy_w(n, h); });
}

entnorm_status entnorm_norm_v(int n, double p, double alpha, double* out) {
  return scalar(out, [&] { return entnorm::norm_v(n, p, alpha); });
}

entnorm_status entnorm_norm_w(int n, double p, double alpha, double* out) {
  return scalar(out, [&] { return entnorm::norm_w(n, p, alpha); });
}

entnorm_status entnorm_dnorm_dh_v(int n, double p, double alpha, double* out) {
  return scalar(out, [&] { return entnorm::dnorm_dh_v(n, p, alpha); });
}

entnorm_status entnorm_g_sign(int n, double p, double alpha, double* out) {
  return scalar(out, [&] { return entnorm::g_sign_fn(n, p, alpha); });
}

entnorm_status entnorm_g_zero(int n, double alpha, double lo, double hi, double* out) {
  return scalar(out, [&] { return entnorm::g_zero(n, alpha, lo, hi); });
}

entnorm_status entnorm_inflection(int n, double alpha, double* chi, double* pi_p) {
  ENTNORM_REQUIRE(chi);
  ENTNORM_REQUIRE(pi_p);
  return guard([&] {
    const entnorm::InflectionSolution s = entnorm::inflection_chi(n, alpha);
    *chi = s.chi;
    *pi_p = s.pi_p;
  });
}

entnorm_status entnorm_tangent_point(int n, double alpha, entnorm_tangent* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = to_tangent(entnorm::cached_tangent(n, alpha)); });
}

entnorm_status entnorm_tangent_generic(int n, double alpha, entnorm_tangent* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = to_tangent(entnorm::solve_tangent_generic(n, alpha)); });
}

entnorm_status entnorm_tangent_residual(int n, double p, double alpha, double* out) {
  return scalar(out, [&] { return entnorm::tangent_residual(n, p, alpha); });
}

// ---- bounds

entnorm_status entnorm_l_min(int n, double alpha, double h, double* out) {
  return scalar(out, [&] { return entnorm::l_min({n, alpha, h}); });
}

entnorm_status entnorm_l_max(int n, double alpha, double h, double* out) {
  return scalar(out, [&] { return entnorm::l_max({n, alpha, h}); });
}

entnorm_status entnorm_l_max_half(int n, double h, double* out) {
  return scalar(out, [&] { return entnorm::l_max_half(n, h); });
}

entnorm_status entnorm_envelope(int n, double alpha, double h, entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::BoundEnvelope env = entnorm::envelope({n, alpha, h});
    *out = to_interval(env.lower, env.upper);
  });
}

entnorm_status entnorm_upper_available(int n, double alpha, int* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = entnorm::upper_envelope_available(n, alpha) ? 1 : 0; });
}

entnorm_status entnorm_unconditional_sandwich(const double* p, size_t n, double alpha,
                                              double* lower_w, double* upper_v) {
  ENTNORM_REQUIRE(p);
  ENTNORM_REQUIRE(lower_w);
  ENTNORM_REQUIRE(upper_v);
  return guard([&] {
    const entnorm::NormSandwich s = entnorm::unconditional_sandwich(to_vector(p, n), alpha);
    *lower_w = s.lower_w;
    *upper_v = s.upper_v;
  });
}

entnorm_status entnorm_entropy_bounds_given_norm(int n, double alpha, double norm,
                                                 entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const auto [lo, hi] = entnorm::cond_entropy_bounds_given_norm(n, alpha, norm);
    *out = to_interval(lo, hi);
  });
}

entnorm_status entnorm_entropy_bounds_given_norm_unconditional(int n, double alpha, double norm,
                                                               entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const auto [lo, hi] = entnorm::entropy_bounds_given_norm_unconditional(n, alpha, norm);
    *out = to_interval(lo, hi);
  });
}

// ---- information measures

entnorm_status entnorm_cond_shannon(const entnorm_joint* joint, double* out) {
  ENTNORM_REQUIRE(joint);
  return scalar(out, [&] { return entnorm::cond_shannon(joint->dist); });
}

entnorm_status entnorm_expected_alpha_norm(const entnorm_joint* joint, double alpha,
                                           double* out) {
  ENTNORM_REQUIRE(joint);
  return scalar(out, [&] { return entnorm::expected_alpha_norm(joint->dist, alpha); });
}

entnorm_status entnorm_cond_renyi(const entnorm_joint* joint, double alpha, double* out) {
  ENTNORM_REQUIRE(joint);
  return scalar(out, [&] { return entnorm::cond_renyi(joint->dist, alpha); });
}

entnorm_status entnorm_cond_rnorm(const entnorm_joint* joint, double r, double* out) {
  ENTNORM_REQUIRE(joint);
  return scalar(out, [&] { return entnorm::cond_rnorm(joint->dist, r); });
}

entnorm_status entnorm_joint_from_channel_uniform(const entnorm_channel* channel,
                                                  entnorm_joint** out) {
  ENTNORM_REQUIRE(channel);
  ENTNORM_REQUIRE(out);
  return guard([&] {
    *out = new entnorm_joint{entnorm::joint_from_channel_uniform(channel->channel)};
  });
}

entnorm_status entnorm_arimoto_mutual_uniform(const entnorm_channel* channel, double alpha,
                                              double* out) {
  ENTNORM_REQUIRE(channel);
  return scalar(out, [&] { return entnorm::arimoto_mutual_uniform(channel->channel, alpha); });
}

entnorm_status entnorm_gallager_e0_uniform(const entnorm_channel* channel, double rho,
                                           double* out) {
  ENTNORM_REQUIRE(channel);
  return scalar(out, [&] { return entnorm::gallager_e0_uniform(channel->channel, rho); });
}

entnorm_status entnorm_renyi_from_norm(double alpha, double norm, double* out) {
  return scalar(out, [&] { return entnorm::renyi_from_norm(alpha, norm); });
}

entnorm_status entnorm_rnorm_from_norm(double r, double norm, double* out) {
  return scalar(out, [&] { return entnorm::rnorm_from_norm(r, norm); });
}

entnorm_status entnorm_renyi_bounds_given_h(int n, double alpha, double h, entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::Interval r = entnorm::renyi_bounds_given_h(n, alpha, h);
    *out = to_interval(r.lo, r.hi);
  });
}

entnorm_status entnorm_rnorm_bounds_given_h(int n, double r, double h, entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::Interval b = entnorm::rnorm_bounds_given_h(n, r, h);
    *out = to_interval(b.lo, b.hi);
  });
}

entnorm_status entnorm_mutual_bounds_given_i(int n, double alpha, double i,
                                             entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::Interval b = entnorm::mutual_bounds_given_i(n, alpha, i);
    *out = to_interval(b.lo, b.hi);
  });
}

entnorm_status entnorm_e0_bounds_given_i(int n, double rho, double i, entnorm_interval* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::Interval b = entnorm::e0_bounds_given_i(n, rho, i);
    *out = to_interval(b.lo, b.hi);
  });
}

// ---- witnesses and oracles

entnorm_status entnorm_witness_min(int n, double h, entnorm_joint** out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = new entnorm_joint{entnorm::witness_min(n, h)}; });
}

entnorm_status entnorm_witness_max(int n, double alpha, double h, entnorm_joint** out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = new entnorm_joint{entnorm::witness_max(n, alpha, h)}; });
}

entnorm_status entnorm_random_joint(int n, int y_size, uint64_t seed, entnorm_joint** out) {
  ENTNORM_REQUIRE(out);
  return guard([&] { *out = new entnorm_joint{entnorm::random_joint(n, y_size, seed)}; });
}

entnorm_status entnorm_verify_envelope(int n, double alpha, long long samples, uint64_t seed,
                                       int y_size, unsigned workers, entnorm_verify_report* out) {
  ENTNORM_REQUIRE(out);
  return guard([&] {
    const entnorm::VerifyReport r =
        entnorm::verify_envelope(n, alpha, samples, seed, y_size, workers);
    *out = entnorm_verify_report{r.samples,  r.violations_lower, r.violations_upper,
                                 r.max_excess, r.seed,          r.n,
                                 r.alpha,    r.y_size,          r.upper_checked ? 1 : 0};
  });
}

entnorm_status entnorm_brute_force_upper(int n, double alpha, double h, int grid_size,
                                         double* out) {
  return scalar(out, [&] { return entnorm::brute_force_upper(n, alpha, h, grid_size); });
}

entnorm_status entnorm_brute_force_lower(int n, double alpha, double h, int grid_size,
                                         double* out) {
  return scalar(out, [&] { return entnorm::brute_force_lower(n, alpha, h, grid_size); });
}

}  // extern "C"
