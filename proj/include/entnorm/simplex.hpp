#pragma once

// Probability vectors on the n-ary simplex, the extremal families u_n, v_n(p)
// and w_n(p), Shannon entropy, the l-alpha norm and the alpha-logarithm.
// All entropies are in nats.

#include <cstddef>
#include <span>
#include <vector>

namespace entnorm {

inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kDomainTolerance = 1e-12;

/// Order of an l-alpha norm. Positive finite values or +infinity (max norm).
class Order {
 public:
  /// Throws DomainError unless alpha > 0. Passing +inf yields infinity().
  explicit Order(double alpha);

  static Order infinity() noexcept { return Order(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// The finite value; +inf when is_infinite().
  double value() const noexcept;

 private:
  Order() noexcept : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

/// A point of the n-ary probability simplex. Entries lie in [0, 1] and sum to
/// one within kSumTolerance; the constructor enforces both.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const ProbVector&) const = default;

 private:
  std::vector<double> values_;
};

enum class Family { V, W, U };

/// Parameter of one of the extremal families. For V, p lies in [0, 1/n]; for
/// W, p lies in [1/n, 1]; U ignores p.
struct ExtremalParam {
  Family family;
  int n;
  double p = 0.0;

  ProbVector materialize() const;
};

ProbVector make_uniform(int n);
/// (1 - (n-1)p, p, ..., p).
ProbVector make_v(int n, double p);
/// floor(1/p) entries equal to p, one remainder entry, then zeros.
ProbVector make_w(int n, double p);

double shannon_entropy(const ProbVector& p);
double alpha_norm(const ProbVector& p, Order alpha);
double alpha_norm(const ProbVector& p, double alpha);
double binary_entropy(double x);

/// (x^(1-alpha) - 1) / (1 - alpha); natural log at alpha = 1. Any real alpha.
double alpha_log(double alpha, double x);

/// Norm of the uniform distribution on m symbols, m^(1/alpha - 1).
double uniform_norm(int m, double alpha);

namespace detail {
// Number of full-p entries of w_n(p), protected against downward rounding of
// exact reciprocals.
int w_full_count(double p);
// -x ln x with 0 ln 0 = 0.
double neg_x_log_x(double x);
double clamp_to_domain(double x, double lo, double hi, double tol, const char* what);
void require_alphabet(int n, int min_n, const char* what);
}  // namespace detail

}  // namespace entnorm
