#include "sosp/meo/symmetric_operator.hpp"

#include <memory>
#include <vector>

#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"

namespace sosp {

SymmetricOperator::SymmetricOperator(std::size_t dim, ApplyFn apply)
    : dim_(dim), apply_(std::move(apply)) {
  if (dim_ == 0) throw ContractError("SymmetricOperator needs dim >= 1");
  if (!apply_) throw ContractError("SymmetricOperator needs an apply function");
}

DenseVector SymmetricOperator::apply(const DenseVector& v) const {
  if (v.size() != dim_) throw ContractError("SymmetricOperator::apply dimension mismatch");
  ++count_;
  DenseVector out = apply_(v);
  if (out.size() != dim_) throw ContractError("SymmetricOperator produced a wrong-sized vector");
  return out;
}

Eigen::MatrixXd SymmetricOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd dense(n, n);
  for (std::size_t j = 0; j < dim_; ++j) {
    dense.col(static_cast<Eigen::Index>(j)) = to_eigen(apply(DenseVector::unit(dim_, j)));
  }
  return dense;
}

SymmetricOperator dense_operator(Eigen::MatrixXd matrix) {
  if (matrix.rows() != matrix.cols()) throw ContractError("dense_operator needs a square matrix");
  auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  const auto dim = static_cast<std::size_t>(shared->rows());
  return SymmetricOperator(dim, [shared](const DenseVector& v) {
    return from_eigen(*shared * to_eigen(v));
  });
}

}  // namespace sosp
