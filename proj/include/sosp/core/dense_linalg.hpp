#pragma once

#include <Eigen/Dense>

#include "sosp/core/dense_vector.hpp"

namespace sosp {

// Dense helpers for exact diagnostics (certificates, spectral-norm checks).
// The optimizer itself never calls these.

Eigen::VectorXd to_eigen(const DenseVector& v);
DenseVector from_eigen(const Eigen::VectorXd& v);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);
double spectral_norm_symmetric(const Eigen::MatrixXd& symmetric);
double spectral_norm(const Eigen::MatrixXd& matrix);

}  // namespace sosp
