#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "entnorm/error.hpp"
#include "entnorm/measures.hpp"
#include "entnorm/oracle.hpp"
#include "support/oracles.hpp"

using namespace entnorm;
using doctest::Approx;

namespace {

double ln(double x) { return std::log(x); }

JointDist deterministic(int n, int y_size) {
  std::vector<double> py(static_cast<std::size_t>(y_size), 1.0 / y_size);
  std::vector<ProbVector> rows;
  for (int y = 0; y < y_size; ++y) {
    std::vector<double> r(static_cast<std::size_t>(n), 0.0);
    r[static_cast<std::size_t>(y % n)] = 1.0;
    rows.emplace_back(r);
  }
  return JointDist(ProbVector(py), rows);
}

JointDist uniform_rows(int n, int y_size) {
  std::vector<double> py(static_cast<std::size_t>(y_size), 1.0 / y_size);
  return JointDist(ProbVector(py), std::vector<ProbVector>(static_cast<std::size_t>(y_size), make_uniform(n)));
}

Channel to_channel(const oracle::Matrix& w) {
  std::vector<ProbVector> rows;
  for (const auto& r : w) rows.emplace_back(r);
  return Channel(rows);
}

Channel identity(int n) {
  oracle::Matrix w(static_cast<std::size_t>(n), oracle::Vec(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) w[i][i] = 1.0;
  return to_channel(w);
}

Channel constant(int n_in, int n_out) {
  return to_channel(oracle::Matrix(static_cast<std::size_t>(n_in),
                                   oracle::Vec(static_cast<std::size_t>(n_out), 1.0 / n_out)));
}

Channel bsc(double eps) { return to_channel({{1 - eps, eps}, {eps, 1 - eps}}); }

}  // namespace

TEST_CASE("JointDist and Channel validate shapes") {
  CHECK_THROWS_AS(JointDist(ProbVector({1.0}), {}), DomainError);
  CHECK_THROWS_AS(JointDist(ProbVector({0.5, 0.5}), {make_uniform(2)}), DomainError);
  CHECK_THROWS_AS(JointDist(ProbVector({0.5, 0.5}), {make_uniform(2), make_uniform(3)}), DomainError);
  CHECK_THROWS_AS(Channel({}), DomainError);
  CHECK_THROWS_AS(Channel({make_uniform(2), make_uniform(3)}), DomainError);
  const JointDist j = uniform_rows(4, 3);
  CHECK(j.n() == 4);
  CHECK(j.y_size() == 3);
}

TEST_CASE("conditional Shannon entropy") {
  CHECK(cond_shannon(deterministic(4, 3)) == 0.0);
  CHECK(cond_shannon(uniform_rows(4, 3)) == Approx(ln(4)).epsilon(1e-14));
  const JointDist witness(ProbVector({0.5, 0.5}), {make_w(3, 0.5), make_w(3, 1.0 / 3)});
  CHECK(cond_shannon(witness) == Approx(0.5 * (ln(2) + ln(3))).epsilon(1e-14));
  CHECK(cond_shannon(witness) == Approx(0.895880).epsilon(1e-6));
}

TEST_CASE("expected norm") {
  for (double a : {0.5, 2.0, 7.0}) {
    CHECK(expected_alpha_norm(uniform_rows(5, 2), a) == Approx(std::pow(5, 1 / a - 1)).epsilon(1e-13));
    CHECK(expected_alpha_norm(deterministic(5, 2), a) == Approx(1.0).epsilon(1e-15));
  }
  const JointDist witness(ProbVector({0.5, 0.5}), {make_w(3, 0.5), make_w(3, 1.0 / 3)});
  CHECK(expected_alpha_norm(witness, 2.0) ==
        Approx(0.5 * (std::pow(2, -0.5) + std::pow(3, -0.5))).epsilon(1e-14));
  CHECK(expected_alpha_norm(uniform_rows(4, 2), Order::infinity()) == Approx(0.25));
}

TEST_CASE("conditional Renyi entropy") {
  for (double a : {0.3, 0.5, 2.0, 10.0}) {
    CHECK(std::fabs(cond_renyi(deterministic(4, 4), a)) < 1e-15);
    CHECK(cond_renyi(uniform_rows(6, 3), a) == Approx(ln(6)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(cond_renyi(uniform_rows(3, 2), 0.0), DomainError);

  SimplexSampler sampler(9);
  for (int t = 0; t < 100; ++t) {
    const JointDist j = random_joint(5, 3, sampler);
    const double h = cond_shannon(j);
    CHECK(std::fabs(cond_renyi(j, 1 + 1e-6) - h) < 1e-4);
    CHECK(std::fabs(cond_renyi(j, 1 - 1e-6) - h) < 1e-4);
    CHECK(cond_renyi(j, 1.0) == h);
    for (double a : {0.4, 2.5}) {
      const double direct = a / (1 - a) * std::log(expected_alpha_norm(j, a));
      CHECK(std::fabs(cond_renyi(j, a) - direct) < 1e-12);
    }
  }
}

TEST_CASE("conditional R-norm information") {
  CHECK(std::fabs(cond_rnorm(deterministic(4, 2), 2.0)) < 1e-15);
  CHECK(cond_rnorm(uniform_rows(4, 2), 2.0) == Approx(2 * (1 - 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(cond_rnorm(uniform_rows(4, 2), 1.0), DomainError);

  SimplexSampler sampler(10);
  for (int t = 0; t < 200; ++t) {
    const JointDist j = random_joint(6, 4, sampler);
    const double v = cond_rnorm(j, 2.0);
    CHECK(v >= 0.0);
    CHECK(v <= 2 * (1 - 1 / std::sqrt(6.0)) + 1e-12);
  }
}

TEST_CASE("Bayes inversion under uniform input") {
  const JointDist id = joint_from_channel_uniform(identity(4));
  CHECK(cond_shannon(id) == 0.0);
  CHECK(id.y_size() == 4);
  const JointDist flat = joint_from_channel_uniform(constant(3, 5));
  CHECK(cond_shannon(flat) == Approx(ln(3)).epsilon(1e-14));
  const JointDist b = joint_from_channel_uniform(bsc(0.1));
  CHECK(cond_shannon(b) == Approx(binary_entropy(0.1)).epsilon(1e-14));
  CHECK(cond_shannon(b) == Approx(0.325083).epsilon(1e-6));

  // Unused outputs are dropped.
  const JointDist sparse = joint_from_channel_uniform(to_channel({{0.5, 0.0, 0.5}, {1.0, 0.0, 0.0}}));
  CHECK(sparse.y_size() == 2);
  CHECK(sparse.p_y()[0] == Approx(0.75));
}

TEST_CASE("Arimoto mutual information") {
  for (double a : {0.5, 1.0, 3.0}) {
    CHECK(arimoto_mutual_uniform(identity(5), a) == Approx(ln(5)).epsilon(1e-13));
    CHECK(std::fabs(arimoto_mutual_uniform(constant(5, 3), a)) < 1e-13);
  }
  std::mt19937 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto w = oracle::random_channel(2 + t % 7, 2 + t % 5, rng);
    const Channel c = to_channel(w);
    CHECK(arimoto_mutual_uniform(c, 1.0) == Approx(oracle::mutual_information(w)).epsilon(1e-12));
    for (double a : {0.5, 2.0}) {
      const double ref = ln(w.size()) - oracle::arimoto_conditional(oracle::uniform_input_joint(w), a);
      CHECK(arimoto_mutual_uniform(c, a) == Approx(ref).epsilon(1e-11).scale(1e-12));
    }
  }
}

TEST_CASE("Gallager E0 and its identity with Arimoto information") {
  CHECK(std::fabs(gallager_e0_uniform(bsc(0.2), 0.0)) < 1e-15);
  CHECK(gallager_e0_uniform(identity(6), 1.0) == Approx(ln(6)).epsilon(1e-14));
  CHECK_THROWS_AS(gallager_e0_uniform(bsc(0.2), -1.0), DomainError);

  std::mt19937 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const auto w = oracle::random_channel(2 + t % 8, 2 + t % 6, rng);
    const Channel c = to_channel(w);
    for (double rho : {-0.5, -0.1, 0.25, 1.0, 2.0}) {
      const double e0 = gallager_e0_uniform(c, rho);
      CHECK(std::fabs(e0 - rho * arimoto_mutual_uniform(c, 1 / (1 + rho))) < 1e-10);
    }
    CHECK(gallager_e0_uniform(c, -0.5) == Approx(-0.5 * arimoto_mutual_uniform(c, 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("norm-to-measure maps") {
  CHECK(renyi_from_norm(2.0, 0.5) == Approx(-2 * ln(0.5)));
  CHECK(renyi_from_norm(0.5, 4.0) == Approx(ln(4)));
  CHECK(rnorm_from_norm(2.0, 0.5) == Approx(1.0));
  CHECK_THROWS_AS(renyi_from_norm(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rnorm_from_norm(1.0, 1.0), DomainError);
  // No negative zero for a point mass.
  CHECK_FALSE(std::signbit(renyi_from_norm(2.0, 1.0)));
}

TEST_CASE("Renyi bounds given Shannon entropy") {
  for (int n : {3, 8}) {
    for (double a : {0.3, 0.5, 2.0}) {
      const Interval top = renyi_bounds_given_h(n, a, ln(n));
      REQUIRE(top.lo);
      CHECK(*top.lo == Approx(ln(n)).epsilon(1e-12));
      if (top.hi) CHECK(*top.hi == Approx(ln(n)).epsilon(1e-12));
      const Interval zero = renyi_bounds_given_h(n, a, 0.0);
      CHECK(std::fabs(*zero.lo) < 1e-12);
    }
  }
  // Below 1/2 only the side coming from L_min exists; for alpha < 1 that is
  // the lower end.
  const Interval partial = renyi_bounds_given_h(8, 0.3, 1.0);
  CHECK(partial.lo.has_value());
  CHECK_FALSE(partial.hi.has_value());

  const Interval iv = renyi_bounds_given_h(16, 2.0, 1.5);
  REQUIRE(iv.lo);
  REQUIRE(iv.hi);
  CHECK(*iv.lo <= *iv.hi);
  CHECK(*iv.hi == Approx(renyi_from_norm(2.0, l_min({16, 2.0, 1.5}))));
  CHECK(*iv.lo == Approx(renyi_from_norm(2.0, l_max({16, 2.0, 1.5}))));
  const Interval one = renyi_bounds_given_h(5, 1.0, 0.7);
  CHECK(*one.lo == 0.7);
  CHECK(*one.hi == 0.7);
}

TEST_CASE("Renyi and R-norm values of random joints fall inside their bounds") {
  SimplexSampler sampler(77);
  for (int t = 0; t < 3000; ++t) {
    const int n = t % 2 ? 16 : 10;
    const JointDist j = random_joint(n, 1 + t % 5, sampler);
    const double h = cond_shannon(j);
    for (double a : {0.3, 0.5, 0.8, 2.0, 4.0}) {
      const Interval iv = renyi_bounds_given_h(n, a, h);
      const double v = cond_renyi(j, a);
      if (iv.lo) CHECK(v >= *iv.lo - 1e-9);
      if (iv.hi) CHECK(v <= *iv.hi + 1e-9);
      const Interval rv = rnorm_bounds_given_h(n, a, h);
      const double r = cond_rnorm(j, a);
      if (rv.lo) CHECK(r >= *rv.lo - 1e-9);
      if (rv.hi) CHECK(r <= *rv.hi + 1e-9);
      if (rv.lo && rv.hi) CHECK(*rv.lo <= *rv.hi + 1e-12);
    }
  }
}

TEST_CASE("R-norm bounds at the ends") {
  for (double r : {0.5, 2.0}) {
    const Interval zero = rnorm_bounds_given_h(10, r, 0.0);
    CHECK(std::fabs(*zero.lo) < 1e-12);
    CHECK(std::fabs(*zero.hi) < 1e-12);
    const double pinch = r / (r - 1) * (1 - std::pow(10.0, 1 / r - 1));
    const Interval top = rnorm_bounds_given_h(10, r, ln(10));
    CHECK(*top.lo == Approx(pinch).epsilon(1e-12));
    CHECK(*top.hi == Approx(pinch).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rnorm_bounds_given_h(10, 1.0, 1.0), DomainError);
}

TEST_CASE("mutual information bounds") {
  for (double a : {0.5, 2.0}) {
    const Interval full = mutual_bounds_given_i(9, a, ln(9));
    CHECK(*full.lo == Approx(ln(9)).epsilon(1e-12));
    CHECK(*full.hi == Approx(ln(9)).epsilon(1e-12));
    const Interval none = mutual_bounds_given_i(9, a, 0.0);
    CHECK(std::fabs(*none.lo) < 1e-12);
    CHECK(std::fabs(*none.hi) < 1e-12);
  }
  const Interval iv = mutual_bounds_given_i(9, 0.5, 1.0);
  CHECK(*iv.lo <= *iv.hi);

  std::mt19937 rng(4);
  int hits = 0;
  for (int t = 0; t < 4000; ++t) {
    // Sparse rows push the mutual information up toward ln 9.
    const auto w = oracle::random_channel(9, 2 + t % 8, rng, t % 2 ? 0.1 : 1.0);
    const Channel c = to_channel(w);
    const double i = arimoto_mutual_uniform(c, 1.0);
    for (double a : {0.3, 0.5, 2.0}) {
      const Interval b = mutual_bounds_given_i(9, a, i);
      const double ia = arimoto_mutual_uniform(c, a);
      if (b.lo) CHECK(ia >= *b.lo - 1e-9);
      if (b.hi) CHECK(ia <= *b.hi + 1e-9);
    }
    if (std::fabs(i - 1.0) < 0.05) ++hits;
  }
  CHECK(hits > 0);
}

TEST_CASE("E0 bounds") {
  const Interval zero = e0_bounds_given_i(5, 0.0, 1.0);
  CHECK(*zero.lo == 0.0);
  CHECK(*zero.hi == 0.0);
  for (double rho : {-0.5, 0.5, 1.0}) {
    const Interval top = e0_bounds_given_i(5, rho, ln(5));
    CHECK(*top.lo == Approx(rho * ln(5)).epsilon(1e-12));
    CHECK(*top.hi == Approx(rho * ln(5)).epsilon(1e-12));
  }
  // Cutoff rate.
  const Interval cut = e0_bounds_given_i(5, 1.0, 1.2);
  CHECK(*cut.lo == Approx(ln(5) - ln(l_max_half(5, ln(5) - 1.2))).epsilon(1e-14));
  CHECK(*cut.lo <= *cut.hi);
  // Beyond rho = 1 only the upper end is established for n >= 3.
  const Interval big = e0_bounds_given_i(5, 2.0, 1.0);
  CHECK_FALSE(big.lo.has_value());
  CHECK(big.hi.has_value());
  CHECK_THROWS_AS(e0_bounds_given_i(5, -1.0, 1.0), DomainError);

  std::mt19937 rng(6);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = t % 3 == 0 ? 2 : (t % 3 == 1 ? 5 : 9);
    const auto w = oracle::random_channel(n, t % 2 ? 2 : 8, rng);
    const Channel c = to_channel(w);
    const double i = arimoto_mutual_uniform(c, 1.0);
    for (double rho : {-0.5, 0.25, 1.0, 2.0}) {
      const Interval b = e0_bounds_given_i(static_cast<int>(n), rho, i);
      const double e0 = gallager_e0_uniform(c, rho);
      if (b.lo) CHECK(e0 >= *b.lo - 1e-9);
      if (b.hi) CHECK(e0 <= *b.hi + 1e-9);
    }
  }
}
