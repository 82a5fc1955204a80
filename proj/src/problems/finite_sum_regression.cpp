#include "sosp/problems/finite_sum_regression.hpp"

#include <cmath>
#include <limits>

#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"

namespace sosp::problems {
namespace {

double rho(double t) { return t * t / (1.0 + t * t); }
double rho_prime(double t) {
  const double s = 1.0 + t * t;
  return 2.0 * t / (s * s);
}
double rho_second(double t) {
  const double s = 1.0 + t * t;
  return (2.0 - 6.0 * t * t) / (s * s * s);
}

}  // namespace

double FiniteSumRegression::max_abs_rho_third() {
  const double t = std::sqrt(1.0 - 2.0 / std::sqrt(5.0));
  const double s = 1.0 + t * t;
  return 24.0 * std::abs(t * (t * t - 1.0)) / (s * s * s * s);
}

FiniteSumRegression::FiniteSumRegression(Eigen::MatrixXd features, Eigen::VectorXd targets,
                                         double lambda)
    : features_(std::move(features)), targets_(std::move(targets)), lambda_(lambda) {
  if (features_.rows() == 0 || features_.cols() == 0) {
    throw ContractError("finite-sum regression needs N >= 1 and d >= 1");
  }
  if (targets_.size() != features_.rows()) throw ContractError("need one target per sample");
  if (!(lambda_ >= 0.0 && std::isfinite(lambda_))) throw ContractError("lambda must be >= 0");
  if (!features_.allFinite() || !targets_.allFinite()) throw NumericError("non-finite data");

  row_norms_ = features_.rowwise().norm();
  const double n = static_cast<double>(features_.rows());
  const Eigen::MatrixXd gram = features_.transpose() * features_ / n;
  const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .maxCoeff();
  constants_ = {static_cast<std::size_t>(features_.cols()), std::numeric_limits<double>::infinity(),
                top + 2.0 * lambda_, lambda_ * max_abs_rho_third(), 0.0};
  // lambda = 0 gives a constant Hessian; any positive M bounds it.
  if (constants_.M == 0.0) constants_.M = 1e-8;
}

Eigen::VectorXd FiniteSumRegression::regularizer_gradient(const Eigen::VectorXd& x) const {
  return lambda_ * x.unaryExpr([](double t) { return rho_prime(t); });
}

Eigen::VectorXd FiniteSumRegression::regularizer_curvature(const Eigen::VectorXd& x) const {
  return lambda_ * x.unaryExpr([](double t) { return rho_second(t); });
}

double FiniteSumRegression::value(const DenseVector& x) const {
  check_dim(x);
  const Eigen::VectorXd xe = to_eigen(x);
  const Eigen::VectorXd r = features_ * xe - targets_;
  return 0.5 * r.squaredNorm() / static_cast<double>(features_.rows()) +
         lambda_ * xe.unaryExpr([](double t) { return rho(t); }).sum();
}

DenseVector FiniteSumRegression::gradient(const DenseVector& x) const {
  check_dim(x);
  const Eigen::VectorXd xe = to_eigen(x);
  const Eigen::VectorXd r = features_ * xe - targets_;
  return from_eigen(features_.transpose() * r / static_cast<double>(features_.rows()) +
                    regularizer_gradient(xe));
}

DenseVector FiniteSumRegression::hessian_vector(const DenseVector& x, const DenseVector& v) const {
  check_dim(x);
  check_dim(v);
  const Eigen::VectorXd ve = to_eigen(v);
  return from_eigen(features_.transpose() * (features_ * ve) / static_cast<double>(features_.rows()) +
                    regularizer_curvature(to_eigen(x)).cwiseProduct(ve));
}

double FiniteSumRegression::sample_value(std::size_t i, const DenseVector& x) const {
  check_dim(x);
  const Eigen::VectorXd xe = to_eigen(x);
  const double r = features_.row(static_cast<Eigen::Index>(i)).dot(xe) - targets_(static_cast<Eigen::Index>(i));
  return 0.5 * r * r + lambda_ * xe.unaryExpr([](double t) { return rho(t); }).sum();
}

DenseVector FiniteSumRegression::sample_gradient(std::size_t i, const DenseVector& x) const {
  check_dim(x);
  const auto row = static_cast<Eigen::Index>(i);
  const Eigen::VectorXd xe = to_eigen(x);
  const double r = features_.row(row).dot(xe) - targets_(row);
  return from_eigen(r * features_.row(row).transpose() + regularizer_gradient(xe));
}

DenseVector FiniteSumRegression::sample_hessian_vector(std::size_t i, const DenseVector& x,
                                                       const DenseVector& v) const {
  check_dim(x);
  check_dim(v);
  const auto row = static_cast<Eigen::Index>(i);
  const Eigen::VectorXd ve = to_eigen(v);
  return from_eigen(features_.row(row).dot(ve) * features_.row(row).transpose() +
                    regularizer_curvature(to_eigen(x)).cwiseProduct(ve));
}

double FiniteSumRegression::gradient_bound(const DenseVector& x) const {
  check_dim(x);
  const Eigen::VectorXd xe = to_eigen(x);
  const Eigen::VectorXd data_part =
      row_norms_.cwiseProduct((features_ * xe).cwiseAbs() + targets_.cwiseAbs());
  const double d = static_cast<double>(features_.cols());
  return data_part.maxCoeff() + 2.0 * lambda_ * std::sqrt(d) * 3.0 * std::sqrt(3.0) / 8.0;
}

double FiniteSumRegression::hessian_bound(const DenseVector& x) const {
  check_dim(x);
  return row_norms_.cwiseAbs2().maxCoeff() + 2.0 * lambda_;
}

std::shared_ptr<const FiniteSumRegression> finite_sum_regression(std::size_t N, std::size_t d,
                                                                 double lambda, Rng data_rng) {
  if (N == 0 || d == 0) throw ContractError("finite-sum regression needs N >= 1 and d >= 1");
  const auto rows = static_cast<Eigen::Index>(N);
  const auto cols = static_cast<Eigen::Index>(d);
  const double feature_scale = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXd planted(cols);
  for (Eigen::Index j = 0; j < cols; ++j) planted(j) = data_rng.normal();
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = feature_scale * data_rng.normal();
    b(i) = a.row(i).dot(planted) + 0.1 * data_rng.normal();
  }
  return std::make_shared<const FiniteSumRegression>(std::move(a), std::move(b), lambda);
}

}  // namespace sosp::problems
