#pragma once

#include <memory>

#include <Eigen/Dense>

#include "sosp/core/rng.hpp"
#include "sosp/problems/problem.hpp"

namespace sosp::problems {

/// Nonconvex regularized least squares
///   f_i(x) = 1/2 (a_i^T x - b_i)^2 + lambda sum_j x_j^2 / (1 + x_j^2).
///
/// The regularizer rho(t) = t^2/(1+t^2) has |rho'| <= 3 sqrt(3)/8,
/// |rho''| <= 2 and |rho'''| = max 24|t(t^2-1)|/(1+t^2)^4, attained at
/// t^2 = 1 - 2/sqrt(5). Hence, globally:
///   L = lambda_max(A^T A / N) + 2 lambda,  M = lambda max|rho'''|,  f_bar = 0.
/// Per-sample bounds (deliberately loose, still valid):
///   G(x) = max_i ||a_i|| (|a_i^T x| + |b_i|) + 2 lambda sqrt(d) 3 sqrt(3)/8
///   K(x) = max_i ||a_i||^2 + 2 lambda.
class FiniteSumRegression final : public FiniteSumProblem {
 public:
  /// Rows of `features` are the a_i.
  FiniteSumRegression(Eigen::MatrixXd features, Eigen::VectorXd targets, double lambda);

  std::string name() const override { return "finite_sum"; }
  const ProblemConstants& constants() const override { return constants_; }

  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hessian_vector(const DenseVector& x, const DenseVector& v) const override;
  bool in_region(const DenseVector&) const override { return true; }

  std::size_t num_samples() const override { return static_cast<std::size_t>(features_.rows()); }
  double sample_value(std::size_t i, const DenseVector& x) const override;
  DenseVector sample_gradient(std::size_t i, const DenseVector& x) const override;
  DenseVector sample_hessian_vector(std::size_t i, const DenseVector& x,
                                    const DenseVector& v) const override;
  double gradient_bound(const DenseVector& x) const override;
  double hessian_bound(const DenseVector& x) const override;

  double lambda() const noexcept { return lambda_; }
  const Eigen::MatrixXd& features() const noexcept { return features_; }
  const Eigen::VectorXd& targets() const noexcept { return targets_; }

  static double max_abs_rho_third();

 private:
  Eigen::VectorXd regularizer_gradient(const Eigen::VectorXd& x) const;
  Eigen::VectorXd regularizer_curvature(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd features_;
  Eigen::VectorXd targets_;
  Eigen::VectorXd row_norms_;
  double lambda_;
  ProblemConstants constants_;
};

/// Draws a_i ~ N(0, I/d), a planted w ~ N(0, I) and b_i = a_i^T w + 0.1 N(0, 1).
std::shared_ptr<const FiniteSumRegression> finite_sum_regression(std::size_t N, std::size_t d,
                                                                 double lambda, Rng data_rng);

}  // namespace sosp::problems
