#include "entnorm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "entnorm/error.hpp"

namespace entnorm {

namespace {

constexpr long long kChunkSize = 4096;

double ln_n(int n) { return std::log(static_cast<double>(n)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

JointDist single_row(ProbVector row) {
  return JointDist(ProbVector({1.0}), std::vector<ProbVector>{std::move(row)});
}

JointDist two_rows(double weight, ProbVector first, ProbVector second) {
  weight = std::clamp(weight, 0.0, 1.0);
  if (weight == 1.0) return single_row(std::move(first));
  if (weight == 0.0) return single_row(std::move(second));
  return JointDist(ProbVector({weight, 1.0 - weight}),
                   std::vector<ProbVector>{std::move(first), std::move(second)});
}

struct CurveSample {
  double h;
  double norm;
};

// Extreme value of lambda N_i + (1 - lambda) N_j over pairs straddling h, with
// lambda fixed by lambda H_i + (1 - lambda) H_j = h. `points` sorted by h.
template <class Better>
double best_mixture(const std::vector<CurveSample>& points, double h, double init, Better better) {
  // The grid ends may miss 0 and ln n by rounding.
  h = std::clamp(h, points.front().h, points.back().h);
  const auto split = std::partition_point(points.begin(), points.end(),
                                          [h](const CurveSample& s) { return s.h < h; });
  double best = init;
  for (auto hi = split; hi != points.end(); ++hi) {
    if (hi->h == h) {
      if (better(hi->norm, best)) best = hi->norm;
      continue;
    }
    for (auto lo = points.begin(); lo != split; ++lo) {
      const double lambda = (hi->h - h) / (hi->h - lo->h);
      const double value = lambda * lo->norm + (1.0 - lambda) * hi->norm;
      if (better(value, best)) best = value;
    }
  }
  return best;
}

void check_brute_args(int n, double h, int grid_size, const char* what) {
  detail::require_alphabet(n, 2, what);
  if (grid_size < 16) {
    throw DomainError(std::string(what) + ": grid size must be >= 16, got " +
                      std::to_string(grid_size));
  }
  if (std::isnan(h) || h < -1e-9 || h > ln_n(n) + 1e-9) {
    throw DomainError(std::string(what) + ": entropy " + std::to_string(h) + " outside [0, ln n]");
  }
}

}  // namespace

JointDist witness_min(int n, double h) {
  detail::require_alphabet(n, 2, "witness_min");
  h = detail::clamp_to_domain(h, 0.0, ln_n(n), 1e-9, "witness_min");
  int m = static_cast<int>(std::floor(std::exp(h) + 1e-9));
  m = std::clamp(m, 1, n - 1);
  const double lo = std::log(static_cast<double>(m));
  const double hi = std::log(m + 1.0);
  const double lambda = (hi - h) / (hi - lo);
  return two_rows(lambda, make_w(n, 1.0 / m), make_w(n, 1.0 / (m + 1)));
}

JointDist witness_max(int n, double alpha, double h) {
  detail::require_alphabet(n, 2, "witness_max");
  h = detail::clamp_to_domain(h, 0.0, ln_n(n), 1e-9, "witness_max");
  if (!upper_envelope_available(n, alpha)) {
    throw UnsupportedOrder("witness_max: no upper envelope for n=" + std::to_string(n) +
                           ", alpha=" + std::to_string(alpha));
  }
  if (n == 2 || alpha == 1.0) return single_row(make_v(n, inv_entropy_v(n, h)));
  const TangentSolution& t = cached_tangent(n, alpha);
  if (h <= t.h_star) return single_row(make_v(n, inv_entropy_v(n, h)));
  const double lambda = (ln_n(n) - h) / (ln_n(n) - t.h_star);
  return two_rows(lambda, make_v(n, t.p_star), make_uniform(n));
}

double SimplexSampler::unit_open() {
  // 53 random bits, shifted half a step off zero: uniform on (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

ProbVector SimplexSampler::draw(int n) {
  detail::require_alphabet(n, 1, "SimplexSampler::draw");
  std::vector<double> spacings(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& e : spacings) {
    e = -std::log(unit_open());
    total += e;
  }
  for (double& e : spacings) e /= total;
  return ProbVector(std::move(spacings));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

JointDist random_joint(int n, int y_size, SimplexSampler& sampler) {
  detail::require_alphabet(n, 2, "random_joint");
  if (y_size < 1) throw DomainError("random_joint: |Y| must be >= 1");
  ProbVector p_y = sampler.draw(y_size);
  std::vector<ProbVector> rows;
  rows.reserve(static_cast<std::size_t>(y_size));
  for (int y = 0; y < y_size; ++y) rows.push_back(sampler.draw(n));
  return JointDist(std::move(p_y), std::move(rows));
}

JointDist random_joint(int n, int y_size, std::uint64_t seed) {
  SimplexSampler sampler(seed);
  return random_joint(n, y_size, sampler);
}

VerifyReport verify_envelope(int n, double alpha, long long samples, std::uint64_t seed,
                             int y_size, unsigned workers) {
  detail::require_alphabet(n, 2, "verify_envelope");
  if (samples < 1) throw DomainError("verify_envelope: samples must be >= 1");
  if (y_size < 1) throw DomainError("verify_envelope: |Y| must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("verify_envelope: order must be positive");

  VerifyReport report;
  report.samples = samples;
  report.seed = seed;
  report.n = n;
  report.alpha = alpha;
  report.y_size = y_size;
  report.upper_checked = upper_envelope_available(n, alpha);
  // Solve the tangent once before fanning out.
  if (report.upper_checked) (void)l_max({n, alpha, 0.0});

  const long long chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<VerifyReport> partial(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](long long c) {
    VerifyReport& out = partial[static_cast<std::size_t>(c)];
    SimplexSampler sampler(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const long long count = std::min(kChunkSize, samples - c * kChunkSize);
    for (long long s = 0; s < count; ++s) {
      const JointDist joint = random_joint(n, y_size, sampler);
      const double h = cond_shannon(joint);
      const double value = expected_alpha_norm(joint, alpha);
      const double below = l_min({n, alpha, h}) - value;
      out.max_excess = std::max(out.max_excess, below);
      if (below > kVerifyTolerance) ++out.violations_lower;
      if (report.upper_checked) {
        const double above = value - l_max({n, alpha, h});
        out.max_excess = std::max(out.max_excess, above);
        if (above > kVerifyTolerance) ++out.violations_upper;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long long>(workers, chunks));
  if (workers <= 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long long c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }

  for (const VerifyReport& part : partial) {
    report.violations_lower += part.violations_lower;
    report.violations_upper += part.violations_upper;
    report.max_excess = std::max(report.max_excess, part.max_excess);
  }
  return report;
}

double brute_force_upper(int n, double alpha, double h, int grid_size) {
  check_brute_args(n, h, grid_size, "brute_force_upper");
  h = std::clamp(h, 0.0, ln_n(n));
  std::vector<CurveSample> points;
  points.reserve(static_cast<std::size_t>(grid_size) + 1);
  for (int k = 0; k <= grid_size; ++k) {
    const double p = (static_cast<double>(k) / grid_size) / n;
    points.push_back({entropy_v(n, p), alpha_norm(make_v(n, p), alpha)});
  }
  // H_v increases with p, so the grid is already sorted.
  return best_mixture(points, h, -std::numeric_limits<double>::infinity(),
                      [](double a, double b) { return a > b; });
}

double brute_force_lower(int n, double alpha, double h, int grid_size) {
  check_brute_args(n, h, grid_size, "brute_force_lower");
  h = std::clamp(h, 0.0, ln_n(n));
  std::vector<CurveSample> points;
  points.reserve(static_cast<std::size_t>(grid_size) + 1);
  for (int k = grid_size; k >= 0; --k) {
    const double p = 1.0 / n + (static_cast<double>(k) / grid_size) * (1.0 - 1.0 / n);
    points.push_back({entropy_w(n, p), alpha_norm(make_w(n, p), alpha)});
  }
  return best_mixture(points, h, std::numeric_limits<double>::infinity(),
                      [](double a, double b) { return a < b; });
}

}  // namespace entnorm
