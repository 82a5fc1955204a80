#include "sosp/problems/matrix_factorization.hpp"

#include <cmath>
#include <vector>

#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::problems {
namespace {

void check_spec(const MatrixFactorizationSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.d);
  if (spec.r == 0 || spec.r >= spec.d) throw ContractError("matrix factorization needs 0 < r < d");
  if (spec.M_star.rows() != d || spec.M_star.cols() != d) {
    throw ContractError("M_star must be d x d");
  }
  if (!(spec.sigma_r > 0.0 && spec.sigma1 >= spec.sigma_r)) {
    throw ContractError("need sigma1 >= sigma_r > 0");
  }
  if (!(spec.Gamma > spec.sigma1)) throw ContractError("need Gamma > sigma1");
}

}  // namespace

MatrixFactorizationSpec make_mf_spec(std::size_t d, std::size_t r, double sigma1, double sigma_r,
                                     double Gamma, Rng& rng) {
  if (r == 0 || r >= d) throw ContractError("matrix factorization needs 0 < r < d");
  if (!(sigma_r > 0.0 && sigma1 >= sigma_r)) throw ContractError("need sigma1 >= sigma_r > 0");
  const auto rows = static_cast<Eigen::Index>(d);
  const auto cols = static_cast<Eigen::Index>(r);
  Eigen::MatrixXd gaussian(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) gaussian(i, j) = rng.normal();
  }
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian).householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  Eigen::VectorXd s(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double t = cols == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(cols - 1);
    s(j) = sigma1 + t * (sigma_r - sigma1);
  }
  const Eigen::MatrixXd z = q * s.cwiseSqrt().asDiagonal();

  MatrixFactorizationSpec spec{d, r, z * z.transpose(), sigma1, sigma_r, Gamma};
  check_spec(spec);
  return spec;
}

MatrixFactorizationSpec mf_spec_from_matrix(const Eigen::MatrixXd& M_star, std::size_t r,
                                            double Gamma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (M_star + M_star.transpose()));
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  const double top = ev.cwiseAbs().maxCoeff();
  const double tol = 1e-10 * std::max(top, 1.0);
  std::vector<double> nonzero;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol) throw ContractError("M_star must be positive semidefinite");
    if (ev(i) > tol) nonzero.push_back(ev(i));
  }
  if (nonzero.size() != r) throw ContractError("M_star rank does not match r");
  MatrixFactorizationSpec spec{static_cast<std::size_t>(M_star.rows()), r, M_star, nonzero.back(),
                               nonzero.front(), Gamma};
  check_spec(spec);
  return spec;
}

MatrixFactorization::MatrixFactorization(MatrixFactorizationSpec spec) : spec_(std::move(spec)) {
  check_spec(spec_);
  const auto lip = theory::mf_constants(spec_.Gamma);
  constants_ = {spec_.d * spec_.r, std::sqrt(spec_.Gamma), lip.L, lip.M, 0.0};
}

Eigen::MatrixXd MatrixFactorization::as_matrix(const DenseVector& x) const {
  check_dim(x);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(x.values().data(), static_cast<Eigen::Index>(spec_.d),
                                    static_cast<Eigen::Index>(spec_.r));
}

DenseVector MatrixFactorization::flatten(const Eigen::MatrixXd& U) const {
  if (U.rows() != static_cast<Eigen::Index>(spec_.d) || U.cols() != static_cast<Eigen::Index>(spec_.r)) {
    throw ContractError("U must be d x r");
  }
  std::vector<double> out(spec_.d * spec_.r);
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    for (Eigen::Index j = 0; j < U.cols(); ++j) out[static_cast<std::size_t>(i * U.cols() + j)] = U(i, j);
  }
  return DenseVector(std::move(out));
}

double MatrixFactorization::value(const DenseVector& x) const {
  const Eigen::MatrixXd U = as_matrix(x);
  return 0.5 * (U * U.transpose() - spec_.M_star).squaredNorm();
}

DenseVector MatrixFactorization::gradient(const DenseVector& x) const {
  const Eigen::MatrixXd U = as_matrix(x);
  return flatten(2.0 * (U * U.transpose() - spec_.M_star) * U);
}

DenseVector MatrixFactorization::hessian_vector(const DenseVector& x, const DenseVector& v) const {
  const Eigen::MatrixXd U = as_matrix(x);
  const Eigen::MatrixXd V = as_matrix(v);
  const Eigen::MatrixXd residual = U * U.transpose() - spec_.M_star;
  return flatten(2.0 * (residual * V + (U * V.transpose() + V * U.transpose()) * U));
}

bool MatrixFactorization::in_region(const DenseVector& x) const {
  const double s = spectral_norm(as_matrix(x));
  return s * s < spec_.Gamma;
}

std::string_view to_string(SaddleClass c) {
  switch (c) {
    case SaddleClass::LargeGradient: return "LargeGradient";
    case SaddleClass::NegativeCurvature: return "NegativeCurvature";
    case SaddleClass::NearOptimum: return "NearOptimum";
  }
  return "NearOptimum";
}

SaddleClass strict_saddle_check(const MatrixFactorization& problem, const DenseVector& U) {
  const auto targets = theory::strict_saddle_targets(problem.spec().sigma_r);
  if (norm(problem.gradient(U)) >= targets.eps_g) return SaddleClass::LargeGradient;
  if (min_eigenvalue(problem.dense_hessian(U)) <= -targets.eps_H) return SaddleClass::NegativeCurvature;
  return SaddleClass::NearOptimum;
}

}  // namespace sosp::problems
