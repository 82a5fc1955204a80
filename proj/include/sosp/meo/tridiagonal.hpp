#pragma once

#include <vector>

#include <Eigen/Dense>

namespace sosp::meo {

struct TridiagonalEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // column j pairs with values[j]
};

/// Eigen-decomposition of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (off_diagonal.size() == diagonal.size() - 1),
/// by implicit QL iterations with Wilkinson-style shifts.
TridiagonalEigen tridiagonal_eigen(const std::vector<double>& diagonal,
                                   const std::vector<double>& off_diagonal);

}  // namespace sosp::meo
