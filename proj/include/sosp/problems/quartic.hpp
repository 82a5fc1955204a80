#pragma once

#include <memory>
#include <vector>

#include "sosp/problems/problem.hpp"

namespace sosp::problems {

/// f(x) = sum_i (x_i^4 / 4 - b_i x_i^2 / 2), a separable strict-saddle test
/// function. The origin is a saddle with lambda_min = -max b_i; the minima
/// sit at x_i = +-sqrt(b_i). Constants hold on the box ||x||_inf <= R:
/// L = 3R^2 + max b, M = 6R, f_bar = -sum b_i^2 / 4 (exact).
class QuarticDoubleWell final : public Problem {
 public:
  QuarticDoubleWell(std::vector<double> b, double radius);

  std::string name() const override { return "quartic"; }
  const ProblemConstants& constants() const override { return constants_; }

  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hessian_vector(const DenseVector& x, const DenseVector& v) const override;
  bool in_region(const DenseVector& x) const override;

  const std::vector<double>& b() const noexcept { return b_; }

 private:
  std::vector<double> b_;
  ProblemConstants constants_;
};

/// `b` holds either one value (broadcast to every coordinate) or d values.
std::shared_ptr<const QuarticDoubleWell> quartic_double_well(std::size_t d, std::vector<double> b,
                                                              double radius);

}  // namespace sosp::problems
