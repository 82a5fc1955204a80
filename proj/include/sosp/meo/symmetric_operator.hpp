#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "sosp/core/dense_vector.hpp"

namespace sosp {

/// A symmetric linear map accessed only through products v -> Hv.
///
/// Each `apply` bumps a call counter, which is how Hessian-vector product
/// costs are accounted. Not safe for concurrent `apply` calls.
class SymmetricOperator {
 public:
  using ApplyFn = std::function<DenseVector(const DenseVector&)>;

  SymmetricOperator(std::size_t dim, ApplyFn apply);

  std::size_t dim() const noexcept { return dim_; }
  DenseVector apply(const DenseVector& v) const;
  std::int64_t hvp_count() const noexcept { return count_; }

  /// Assembles the dense matrix column by column; costs dim() products.
  Eigen::MatrixXd to_dense() const;

 private:
  std::size_t dim_;
  ApplyFn apply_;
  mutable std::int64_t count_ = 0;
};

/// Operator backed by an explicit symmetric matrix.
SymmetricOperator dense_operator(Eigen::MatrixXd matrix);

}  // namespace sosp
