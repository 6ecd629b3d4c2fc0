#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "entnorm/bounds.hpp"
#include "entnorm/error.hpp"
#include "entnorm/oracle.hpp"
#include "support/oracles.hpp"

using namespace entnorm;
using doctest::Approx;

namespace {

double ln(double x) { return std::log(x); }

const double kOrders[] = {0.5, 0.7, 0.9, 1.5, 2.0, 4.0};

}  // namespace

TEST_CASE("l_min at the uniform points and in between") {
  CHECK(l_min({8, 2.0, ln(4)}) == Approx(0.5).epsilon(1e-14));
  CHECK(l_min({8, 2.0, 0.5 * (ln(2) + ln(3))}) ==
        Approx(0.5 * (std::pow(2.0, -0.5) + std::pow(3.0, -0.5))).epsilon(1e-14));
  CHECK(l_min({8, 2.0, 0.5 * (ln(2) + ln(3))}) == Approx(0.642228).epsilon(1e-6));
  for (double a : {0.3, 0.5, 2.0}) {
    CHECK(l_min({5, a, 0.0}) == 1.0);
    for (int m = 1; m <= 5; ++m) CHECK(l_min({5, a, ln(m)}) == Approx(std::pow(m, 1 / a - 1)).epsilon(1e-13));
  }
  CHECK(l_min({5, 1.0, 0.7}) == 1.0);
  CHECK_THROWS_AS(l_min({5, 2.0, ln(5) + 1e-6}), DomainError);
  CHECK_THROWS_AS(l_min({5, 0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(l_min({1, 2.0, 0.0}), DomainError);
}

TEST_CASE("l_max endpoints and the tangent branch") {
  for (int n : {2, 3, 8}) {
    for (double a : kOrders) {
      CHECK(l_max({n, a, 0.0}) == Approx(1.0).epsilon(1e-14));
      CHECK(l_max({n, a, ln(n)}) == Approx(std::pow(n, 1 / a - 1)).epsilon(1e-13));
    }
  }
  // alpha = 1/2, n = 4, h = 1.0 sits on the tangent branch.
  CHECK(entropy_v(4, 1.0 / 12) < 1.0);
  const double closed = 4.0 - 2.0 * (ln(4) - 1.0) / ln(3);
  CHECK(l_max({4, 0.5, 1.0}) == Approx(closed).epsilon(1e-12));
  CHECK(l_max({4, 0.5, 1.0}) == Approx(3.296759).epsilon(1e-6));

  CHECK_THROWS_AS(l_max({8, 0.3, 1.0}), UnsupportedOrder);
  CHECK_NOTHROW(l_max({2, 0.3, 0.5}));
  CHECK(l_max({8, 1.0, 1.0}) == 1.0);
}

TEST_CASE("l_max_half") {
  const double closed = 4.0 - 2.0 * (ln(4) - 1.2) / ln(3);
  CHECK(l_max_half(4, 1.2) == Approx(closed).epsilon(1e-14));
  CHECK(l_max_half(4, 1.2) == Approx(3.660855).epsilon(1e-6));
  for (int n : {2, 3, 9}) CHECK(l_max_half(n, ln(n)) == Approx(n).epsilon(1e-13));
  CHECK(l_max_half(4, 0.5) == Approx(oracle::v_norm_at_entropy(4, 0.5, 0.5)).epsilon(1e-12));
  for (int n : {3, 4, 8, 16}) {
    for (int k = 0; k <= 1023; ++k) {
      const double h = ln(n) * k / 1023.0;
      CHECK(std::fabs(l_max_half(n, h) - l_max({n, 0.5, h})) < 1e-9);
    }
  }
}

TEST_CASE("envelope availability") {
  CHECK_FALSE(envelope({8, 0.3, 1.0}).upper.has_value());
  const BoundEnvelope binary = envelope({2, 0.3, 0.5});
  CHECK(binary.upper.has_value());
  CHECK(binary.lower <= *binary.upper);
  const BoundEnvelope pinch = envelope({3, 2.0, ln(3)});
  CHECK(pinch.lower == Approx(1 / std::sqrt(3.0)).epsilon(1e-13));
  CHECK(*pinch.upper == Approx(1 / std::sqrt(3.0)).epsilon(1e-13));
  CHECK(upper_envelope_available(3, 0.5));
  CHECK_FALSE(upper_envelope_available(3, 0.49));
  CHECK_FALSE(upper_envelope_available(3, 1e300 * 1e10));
  CHECK(upper_envelope_available(2, 0.01));
  CHECK_FALSE(upper_envelope_available(2, 0.0));
}

TEST_CASE("l_max is continuous at the tangent point") {
  for (int n : {3, 5, 8}) {
    for (double a : kOrders) {
      const TangentSolution& t = cached_tangent(n, a);
      const double left = l_max({n, a, t.h_star - 1e-10});
      const double right = l_max({n, a, t.h_star + 1e-10});
      CHECK(std::fabs(left - right) < 1e-9);
      CHECK(l_max({n, a, t.h_star}) == Approx(t.norm_star).epsilon(1e-12));
    }
  }
}

TEST_CASE("shape of the envelopes: monotone, convex lower, concave upper") {
  for (int n : {2, 3, 8}) {
    for (double a : kOrders) {
      const int pts = 1000;
      std::vector<double> lo(pts + 1), hi(pts + 1);
      for (int k = 0; k <= pts; ++k) {
        const double h = ln(n) * k / pts;
        lo[k] = l_min({n, a, h});
        hi[k] = l_max({n, a, h});
        CHECK(lo[k] <= hi[k] + 1e-12);
      }
      for (int k = 1; k <= pts; ++k) {
        if (a < 1) {
          CHECK(lo[k] > lo[k - 1]);
          CHECK(hi[k] > hi[k - 1]);
        } else {
          CHECK(lo[k] < lo[k - 1]);
          CHECK(hi[k] < hi[k - 1]);
        }
      }
      for (int k = 1; k < pts; ++k) {
        CHECK(lo[k + 1] - 2 * lo[k] + lo[k - 1] >= -1e-12);
        CHECK(hi[k + 1] - 2 * hi[k] + hi[k - 1] <= 1e-12);
      }
    }
  }
}

TEST_CASE("envelopes enclose both boundary curves of the unconditional region") {
  for (int n : {3, 4, 8}) {
    for (double a : kOrders) {
      for (int k = 0; k <= 200; ++k) {
        const double pv = (k / 200.0) / n;
        const double pw = 1.0 / n + (k / 200.0) * (1.0 - 1.0 / n);
        const auto v = oracle::v_vector(n, pv);
        const auto w = oracle::w_vector(n, pw);
        const double hv = oracle::entropy(v), hw = oracle::entropy(w);
        const double nv = oracle::norm(v, a), nw = oracle::norm(w, a);
        CHECK(l_min({n, a, hv}) - 1e-9 <= nv);
        CHECK(nv <= l_max({n, a, hv}) + 1e-9);
        CHECK(l_min({n, a, hw}) - 1e-9 <= nw);
        CHECK(nw <= l_max({n, a, hw}) + 1e-9);
        // Upper dominates the v-curve, lower is dominated by the w-curve,
        // with orientation depending on alpha.
        if (a > 1) {
          CHECK(l_max({n, a, hv}) >= nv - 1e-12);
          CHECK(l_min({n, a, hw}) <= nw + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("unconditional sandwich") {
  for (double a : {0.5, 2.0, 3.5}) {
    const NormSandwich u = unconditional_sandwich(make_uniform(5), a);
    CHECK(u.lower_w == Approx(std::pow(5.0, 1 / a - 1)).epsilon(1e-12));
    CHECK(u.upper_v == Approx(std::pow(5.0, 1 / a - 1)).epsilon(1e-12));
    const NormSandwich pm = unconditional_sandwich(ProbVector({0.0, 1.0, 0.0}), a);
    CHECK(pm.lower_w == Approx(1.0).epsilon(1e-12));
    CHECK(pm.upper_v == Approx(1.0).epsilon(1e-12));
  }
  const ProbVector p({0.5, 0.3, 0.2});
  const NormSandwich s = unconditional_sandwich(p, 2.0);
  const double norm = oracle::norm({0.5, 0.3, 0.2}, 2.0);
  // For alpha > 1 the v-distribution carries the larger norm.
  CHECK(s.lower_w < norm);
  CHECK(norm < s.upper_v);
}

TEST_CASE("unconditional sandwich holds on random vectors") {
  std::mt19937 rng(5);
  for (int n : {2, 3, 6}) {
    for (double a : {0.3, 0.5, 2.0, 5.0}) {
      for (int t = 0; t < 500; ++t) {
        const auto raw = oracle::random_simplex(n, rng);
        const NormSandwich s = unconditional_sandwich(ProbVector(raw), a);
        const double norm = oracle::norm(raw, a);
        const double lo = std::min(s.lower_w, s.upper_v), hi = std::max(s.lower_w, s.upper_v);
        CHECK(lo - 1e-9 <= norm);
        CHECK(norm <= hi + 1e-9);
      }
    }
  }
}

TEST_CASE("entropy range given an unconditional norm") {
  for (double a : {0.5, 2.0}) {
    const auto [lo, hi] = entropy_bounds_given_norm_unconditional(4, a, std::pow(4.0, 1 / a - 1));
    CHECK(lo == Approx(ln(4)).epsilon(1e-10));
    CHECK(hi == Approx(ln(4)).epsilon(1e-10));
    const auto [lo1, hi1] = entropy_bounds_given_norm_unconditional(4, a, 1.0);
    CHECK(std::fabs(lo1) < 1e-10);
    CHECK(std::fabs(hi1) < 1e-10);
  }
  const auto [lo, hi] = entropy_bounds_given_norm_unconditional(3, 2.0, 0.8);
  CHECK(lo < hi);
  CHECK(std::fabs(norm_w(3, inv_entropy_w(3, lo), 2.0) - 0.8) < 1e-9);
  CHECK(std::fabs(norm_v(3, inv_entropy_v(3, hi), 2.0) - 0.8) < 1e-9);

  // Exhaustive grid over the ternary simplex.
  const int g = 600;
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; i + j <= g; ++j) {
      const oracle::Vec p{double(i) / g, double(j) / g, double(g - i - j) / g};
      if (std::fabs(oracle::norm(p, 2.0) - 0.8) > 1e-3) continue;
      const double h = oracle::entropy(p);
      // A norm slack of 1e-3 translates into an entropy slack of about 1e-2.
      CHECK(h >= lo - 2e-2);
      CHECK(h <= hi + 2e-2);
    }
  }
  CHECK_THROWS_AS(entropy_bounds_given_norm_unconditional(3, 2.0, 0.4), DomainError);
  CHECK_THROWS_AS(entropy_bounds_given_norm_unconditional(3, 1.0, 1.0), DomainError);
}

TEST_CASE("conditional entropy range given the expected norm") {
  for (double a : {0.5, 0.8, 2.0}) {
    const double u = std::pow(5.0, 1 / a - 1);
    const auto [lo, hi] = cond_entropy_bounds_given_norm(5, a, u);
    CHECK(lo == Approx(ln(5)).epsilon(1e-12));
    CHECK(hi == Approx(ln(5)).epsilon(1e-12));
  }
  const auto [z0, z1] = cond_entropy_bounds_given_norm(5, 2.0, 1.0);
  CHECK(z0 == 0.0);
  CHECK(z1 == 0.0);

  const auto [lo, hi] = cond_entropy_bounds_given_norm(8, 0.5, 4.0);
  CHECK(lo < hi);
  CHECK(std::fabs(l_max({8, 0.5, lo}) - 4.0) < 1e-9);
  CHECK(std::fabs(l_min({8, 0.5, hi}) - 4.0) < 1e-9);

  CHECK_THROWS_AS(cond_entropy_bounds_given_norm(8, 0.3, 4.0), UnsupportedOrder);
  CHECK_THROWS_AS(cond_entropy_bounds_given_norm(8, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(cond_entropy_bounds_given_norm(8, 0.5, 9.0), DomainError);
}

TEST_CASE("sampled joints near a target norm respect the entropy range") {
  // Mixed Dirichlet shapes spread the sampled norms over the whole range.
  std::mt19937 rng(2024);
  const int n = 8;
  const double a = 0.5, target = 4.0, window = 1e-2;
  const double shapes[] = {0.2, 0.5, 1.0};
  const auto [lo, hi] = cond_entropy_bounds_given_norm(n, a, target);
  int hits = 0;
  for (int t = 0; t < 20000; ++t) {
    const std::size_t ys = 1 + t % 6;
    const auto rows = oracle::random_channel(ys, n, rng, shapes[t % 3]);
    std::vector<ProbVector> pr;
    for (const auto& r : rows) pr.emplace_back(r);
    const JointDist j(ProbVector(oracle::random_simplex(ys, rng)), pr);
    const double norm = expected_alpha_norm(j, a);
    if (std::fabs(norm - target) > window) continue;
    ++hits;
    const double h = cond_shannon(j);
    CHECK(h >= cond_entropy_bounds_given_norm(n, a, target - window).first - 1e-9);
    CHECK(h <= cond_entropy_bounds_given_norm(n, a, target + window).second + 1e-9);
  }
  CHECK(lo < hi);
  CHECK(hits > 10);
}

TEST_CASE("tangent cache is safe under concurrent use") {
  std::vector<std::jthread> pool;
  std::vector<double> out(8);
  for (int w = 0; w < 8; ++w) {
    pool.emplace_back([&, w] { out[w] = l_max({11, 1.7 + (w % 2), 1.0}); });
  }
  pool.clear();
  for (int w = 0; w < 8; ++w) CHECK(out[w] == out[w % 2]);
}
