#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "sosp/core/dense_vector.hpp"
#include "sosp/meo/symmetric_operator.hpp"

namespace sosp::problems {

/// Closed-form constants valid on the problem's region.
struct ProblemConstants {
  std::size_t dim = 0;
  double region_radius = 0.0;  // infinite when the constants hold globally
  double L = 0.0;              // gradient Lipschitz constant
  double M = 0.0;              // Hessian Lipschitz constant
  double f_bar = 0.0;          // lower bound on f
};

/// Smooth test objective with exact value, gradient and Hessian-vector
/// products. Implementations are immutable and safe to share across threads.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual const ProblemConstants& constants() const = 0;
  std::size_t dim() const { return constants().dim; }

  virtual double value(const DenseVector& x) const = 0;
  virtual DenseVector gradient(const DenseVector& x) const = 0;
  virtual DenseVector hessian_vector(const DenseVector& x, const DenseVector& v) const = 0;

  /// Whether x lies in the region where L and M are valid.
  virtual bool in_region(const DenseVector& x) const = 0;

  /// Exact Hessian at x as an operator. The operator keeps a pointer to this
  /// problem, which must outlive it.
  SymmetricOperator hessian_operator(const DenseVector& x) const;
  Eigen::MatrixXd dense_hessian(const DenseVector& x) const;

 protected:
  void check_dim(const DenseVector& x) const;
};

/// f(x) = (1/N) sum_i f_i(x) with per-component access.
class FiniteSumProblem : public Problem {
 public:
  virtual std::size_t num_samples() const = 0;
  virtual double sample_value(std::size_t i, const DenseVector& x) const = 0;
  virtual DenseVector sample_gradient(std::size_t i, const DenseVector& x) const = 0;
  virtual DenseVector sample_hessian_vector(std::size_t i, const DenseVector& x,
                                            const DenseVector& v) const = 0;

  /// G(x) >= ||grad f_i(x)|| for every i.
  virtual double gradient_bound(const DenseVector& x) const = 0;
  /// K(x) >= ||hess f_i(x)|| for every i.
  virtual double hessian_bound(const DenseVector& x) const = 0;
};

}  // namespace sosp::problems
