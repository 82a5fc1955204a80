#pragma once

#include <memory>
#include <string_view>

#include <Eigen/Dense>

#include "sosp/core/rng.hpp"
#include "sosp/problems/problem.hpp"

namespace sosp::problems {

struct MatrixFactorizationSpec {
  std::size_t d = 0;
  std::size_t r = 0;
  Eigen::MatrixXd M_star;  // symmetric PSD, rank r
  double sigma1 = 0.0;     // largest singular value of M_star
  double sigma_r = 0.0;    // smallest nonzero singular value
  double Gamma = 0.0;      // region ||U||^2 < Gamma, Gamma > sigma1
};

/// Plants M* = Z Z^T with Z = Q diag(sqrt(s)), Q a d x r matrix of
/// orthonormalized Gaussian columns and s spaced linearly from sigma1 down to
/// sigma_r. The condition number sigma1 / sigma_r is the knob that separates
/// the tight and loose tolerance couplings.
MatrixFactorizationSpec make_mf_spec(std::size_t d, std::size_t r, double sigma1, double sigma_r,
                                     double Gamma, Rng& rng);

/// Spec for a caller-supplied M*; its nonzero spectrum must have exactly r values.
MatrixFactorizationSpec mf_spec_from_matrix(const Eigen::MatrixXd& M_star, std::size_t r,
                                            double Gamma);

/// f(U) = 1/2 ||U U^T - M*||_F^2 over U in R^{d x r}, stored row-major in a
/// DenseVector of length d*r. L = 16 Gamma and M = 24 sqrt(Gamma) inside
/// ||U||^2 < Gamma; f_bar = 0.
class MatrixFactorization final : public Problem {
 public:
  explicit MatrixFactorization(MatrixFactorizationSpec spec);

  std::string name() const override { return "matrix_factorization"; }
  const ProblemConstants& constants() const override { return constants_; }

  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hessian_vector(const DenseVector& x, const DenseVector& v) const override;
  bool in_region(const DenseVector& x) const override;

  const MatrixFactorizationSpec& spec() const noexcept { return spec_; }

  Eigen::MatrixXd as_matrix(const DenseVector& x) const;
  DenseVector flatten(const Eigen::MatrixXd& U) const;

 private:
  MatrixFactorizationSpec spec_;
  ProblemConstants constants_;
};

enum class SaddleClass { LargeGradient, NegativeCurvature, NearOptimum };

std::string_view to_string(SaddleClass c);

/// Tests, in order, ||grad f(U)|| >= sigma_r^{3/2}/24, then
/// lambda_min(hess f(U)) <= -sigma_r/3; otherwise NearOptimum.
SaddleClass strict_saddle_check(const MatrixFactorization& problem, const DenseVector& U);

}  // namespace sosp::problems
