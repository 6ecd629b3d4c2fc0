#pragma once

// Ground truth for the envelopes: joints that attain them, uniform sampling of
// joints, Monte Carlo envelope checks and a brute-force search over two-point
// mixtures of the boundary curves.

#include <cstdint>
#include <random>

#include "entnorm/measures.hpp"

namespace entnorm {

inline constexpr double kVerifyTolerance = 1e-9;

/// Two-outcome joint attaining L_min at conditional entropy h. Zero-weight
/// rows are dropped, so h = ln m yields a single row u_m.
JointDist witness_min(int n, double h);
/// Joint attaining L_max at conditional entropy h: one v_n row on the curve
/// branch, a mixture of v_n(p_star) and u_n on the tangent branch.
JointDist witness_max(int n, double alpha, double h);

/// Uniform draws from the probability simplex by normalized exponential
/// spacings. Deterministic in the seed.
class SimplexSampler {
 public:
  explicit SimplexSampler(std::uint64_t seed) : engine_(seed) {}

  ProbVector draw(int n);

 private:
  double unit_open();

  std::mt19937_64 engine_;
};

/// Seed for the independent stream number `index` derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// P_Y and every row drawn uniformly from their simplices.
JointDist random_joint(int n, int y_size, std::uint64_t seed);
JointDist random_joint(int n, int y_size, SimplexSampler& sampler);

struct VerifyReport {
  long long samples = 0;
  long long violations_lower = 0;
  long long violations_upper = 0;
  /// Largest amount by which any sample crossed a bound; 0 when none did.
  double max_excess = 0.0;
  std::uint64_t seed = 0;
  int n = 0;
  double alpha = 0.0;
  int y_size = 0;
  bool upper_checked = false;
};

/// Checks L_min <= E-norm <= L_max on random joints at their own H(X|Y).
/// Samples are processed in fixed chunks with per-chunk seeds, so the report
/// does not depend on `workers`. workers = 0 picks the hardware concurrency.
VerifyReport verify_envelope(int n, double alpha, long long samples, std::uint64_t seed,
                             int y_size = 4, unsigned workers = 0);

/// Concave envelope of the v-curve at h over two-point mixtures of a grid of
/// grid_size + 1 points. Grids of sizes G and 2G are nested.
double brute_force_upper(int n, double alpha, double h, int grid_size);
/// Convex envelope of the w-curve at h over two-point mixtures.
double brute_force_lower(int n, double alpha, double h, int grid_size);

}  // namespace entnorm
