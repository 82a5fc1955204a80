#include "sosp/core/dense_linalg.hpp"

#include <vector>

#include "sosp/core/error.hpp"

namespace sosp {

Eigen::VectorXd to_eigen(const DenseVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.values().data(), static_cast<Eigen::Index>(v.size()));
}

DenseVector from_eigen(const Eigen::VectorXd& v) {
  return DenseVector(std::vector<double>(v.data(), v.data() + v.size()));
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 0 || symmetric.rows() != symmetric.cols()) {
    throw ContractError("min_eigenvalue needs a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver failed");
  return solver.eigenvalues()(0);
}

double spectral_norm_symmetric(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& matrix) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  return svd.singularValues()(0);
}

}  // namespace sosp
