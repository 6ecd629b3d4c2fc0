#pragma once

// Conditional information measures of finite joint distributions and
// uniform-input channels, and the bounds they inherit from the entropy-norm
// envelopes.

#include <span>
#include <vector>

#include "entnorm/bounds.hpp"
#include "entnorm/simplex.hpp"

namespace entnorm {

/// P_Y together with one n-ary conditional row P_{X|Y}(.|y) per outcome y.
class JointDist {
 public:
  JointDist(ProbVector p_y, std::vector<ProbVector> rows);

  const ProbVector& p_y() const noexcept { return p_y_; }
  std::span<const ProbVector> rows() const noexcept { return rows_; }
  /// Alphabet size of X.
  int n() const noexcept { return static_cast<int>(rows_.front().size()); }
  int y_size() const noexcept { return static_cast<int>(rows_.size()); }

 private:
  ProbVector p_y_;
  std::vector<ProbVector> rows_;
};

/// Transition matrix P_{Y|X}: one distribution over outputs per input symbol.
class Channel {
 public:
  explicit Channel(std::vector<ProbVector> transitions);

  std::span<const ProbVector> transitions() const noexcept { return transitions_; }
  int n_in() const noexcept { return static_cast<int>(transitions_.size()); }
  int n_out() const noexcept { return static_cast<int>(transitions_.front().size()); }

 private:
  std::vector<ProbVector> transitions_;
};

double cond_shannon(const JointDist& j);
double expected_alpha_norm(const JointDist& j, Order alpha);
double expected_alpha_norm(const JointDist& j, double alpha);
/// Arimoto conditional Renyi entropy; Shannon at alpha = 1.
double cond_renyi(const JointDist& j, double alpha);
/// Conditional R-norm information (R / (R - 1)) (1 - E||P||_R).
double cond_rnorm(const JointDist& j, double r);

/// Joint of (X, Y) with X uniform, by Bayes inversion. Outputs that are never
/// observed are dropped.
JointDist joint_from_channel_uniform(const Channel& c);
/// I_alpha(X; Y) = ln n_in - H_alpha(X|Y) under uniform input.
double arimoto_mutual_uniform(const Channel& c, double alpha);
/// Gallager's E0(rho) under uniform input, rho > -1.
double gallager_e0_uniform(const Channel& c, double rho);

/// f_alpha(x) = (alpha / (1 - alpha)) ln x, mapping E-norm to H_alpha.
double renyi_from_norm(double alpha, double norm);
/// f_R(x) = (R / (R - 1)) (1 - x), mapping E-norm to the R-norm information.
double rnorm_from_norm(double r, double norm);

Interval renyi_bounds_given_h(int n, double alpha, double h);
Interval rnorm_bounds_given_h(int n, double r, double h);
Interval mutual_bounds_given_i(int n, double alpha, double i);
Interval e0_bounds_given_i(int n, double rho, double i);

}  // namespace entnorm
