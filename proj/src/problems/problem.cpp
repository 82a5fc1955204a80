#include "sosp/problems/problem.hpp"

#include <string>

#include "sosp/core/error.hpp"

namespace sosp::problems {

SymmetricOperator Problem::hessian_operator(const DenseVector& x) const {
  check_dim(x);
  return SymmetricOperator(dim(), [this, x](const DenseVector& v) { return hessian_vector(x, v); });
}

Eigen::MatrixXd Problem::dense_hessian(const DenseVector& x) const {
  Eigen::MatrixXd h = hessian_operator(x).to_dense();
  return 0.5 * (h + h.transpose());
}

void Problem::check_dim(const DenseVector& x) const {
  if (x.size() != dim()) {
    throw ContractError(name() + ": expected dimension " + std::to_string(dim()) + ", got " +
                        std::to_string(x.size()));
  }
}

}  // namespace sosp::problems
