#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sosp/core/error.hpp"
#include "sosp/meo/lanczos.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::meo {
namespace {

using sosp::testing::planted_symmetric;
using sosp::testing::random_symmetric;
using sosp::testing::to_vec;

TEST(SymmetricOperator, CountsProductsAndRejectsBadInput) {
  const SymmetricOperator H = dense_operator(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(H.hvp_count(), 0);
  H.apply(DenseVector{1, 2, 3});
  H.apply(DenseVector{1, 2, 3});
  EXPECT_EQ(H.hvp_count(), 2);
  EXPECT_THROW(H.apply(DenseVector{1, 2}), ContractError);
  EXPECT_THROW(SymmetricOperator(0, [](const DenseVector& v) { return v; }), ContractError);
  const SymmetricOperator bad(1, [](const DenseVector&) {
    return DenseVector(std::vector<double>{std::nan("")});
  });
  EXPECT_THROW(bad.apply(DenseVector{1}), NumericError);
}

TEST(SymmetricOperator, ProbePairsAreSymmetric) {
  Rng rng(12, 0);
  const Eigen::MatrixXd A = random_symmetric(rng, 20, 3.0);
  const SymmetricOperator H = dense_operator(A);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd u = sosp::testing::gaussian_vector(rng, 20);
    const Eigen::VectorXd v = sosp::testing::gaussian_vector(rng, 20);
    const double uHv = u.dot(to_vec(H.apply(sosp::testing::to_dense(v))));
    const double vHu = v.dot(to_vec(H.apply(sosp::testing::to_dense(u))));
    EXPECT_LE(std::abs(uHv - vHu), 1e-8 * u.norm() * v.norm() * 3.0);
  }
}

TEST(MinEigpair, DiagonalTwoByTwo) {
  const SymmetricOperator H = dense_operator(Eigen::Vector2d(2, -3).asDiagonal());
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s, 0);
    const EigenEstimate e = min_eigpair(H, 0.09, 0.05, rng);
    EXPECT_LE(e.lambda_hat, -3 + 0.01);
    const double cosang = std::min(1.0, std::abs(e.p_hat[1]));
    EXPECT_LE(std::acos(cosang), 0.15);
  }
}

TEST(MinEigpair, IdentityInFiveDimensions) {
  const SymmetricOperator H = dense_operator(Eigen::MatrixXd::Identity(5, 5));
  Rng rng(1, 0);
  const EigenEstimate e = min_eigpair(H, 0.09, 0.05, rng);
  EXPECT_GE(e.lambda_hat, 1 - 1e-8);
  EXPECT_LE(e.lambda_hat, 1 + 0.01);
  EXPECT_EQ(e.hvps_used, 1);  // the start vector is already an eigenvector
}

TEST(MinEigpair, PlantedSpectrumSucceedsOftenEnough) {
  const std::vector<double> spectrum{-2, -1, 0, 1, 2, 3, 4, 5};
  const double eps_H = 0.09, delta = 0.05;
  int failures = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(s, 77);
    const Eigen::MatrixXd A = planted_symmetric(rng, spectrum);
    const double lmin = sosp::testing::min_eig(A);
    ASSERT_NEAR(lmin, -2.0, 1e-12);
    const EigenEstimate e = min_eigpair(dense_operator(A), eps_H, delta, rng);
    if (e.lambda_hat > lmin + eps_H / 9) ++failures;
  }
  EXPECT_LE(failures / 500.0, delta);
}

// A tight cluster near zero yields a Ritz pair with a tiny residual long
// before the isolated negative eigenvalue is resolved. That pair must not end
// the search, since a nonnegative estimate would stop the optimizer.
TEST(MinEigpair, ConvergedClusterPairDoesNotHideNegativeCurvature) {
  const std::vector<double> spectrum{-2,    0.0,   5e-4, 1e-3, 1.5e-3, 2e-3, 2.5e-3,
                                     3e-3, 3.5e-3, 2.0,  4.0,  8.0};
  const double eps_H = 0.1, delta = 1e-6;
  int failures = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    Rng rng(s, 78);
    const Eigen::MatrixXd A = planted_symmetric(rng, spectrum);
    const EigenEstimate e = min_eigpair(dense_operator(A), eps_H, delta, rng);
    if (e.lambda_hat > -2.0 + eps_H / 9) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(MinEigpair, InvariantsOnRandomOperators) {
  Rng gen(2718, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + gen.index(30);
    const double nrm = gen.uniform(0.1, 10);
    const Eigen::MatrixXd A = random_symmetric(gen, d, nrm);
    const SymmetricOperator H = dense_operator(A);
    const double eps_H = gen.uniform(0.01, 1.0);
    const double delta = gen.uniform(1e-6, 0.5);
    const EigenEstimate e = min_eigpair(H, eps_H, delta, gen);

    EXPECT_NEAR(norm(e.p_hat), 1.0, 1e-12);
    const double rq = to_vec(e.p_hat).dot(A * to_vec(e.p_hat));
    EXPECT_LE(std::abs(e.lambda_hat - rq), 1e-10 * std::max(1.0, std::abs(rq)));
    EXPECT_LE(e.hvps_used, static_cast<std::int64_t>(d));
    EXPECT_EQ(e.hvps_used, H.hvp_count());
    const double cap = theory::lanczos_cap(d, delta, sosp::testing::spectral_norm_sym(A), eps_H / 9);
    EXPECT_LE(static_cast<double>(e.hvps_used), std::floor(cap) + 1e-9);
    ASSERT_EQ(e.ritz_history.size(), static_cast<std::size_t>(e.hvps_used));
    for (std::size_t k = 1; k < e.ritz_history.size(); ++k) {
      EXPECT_LE(e.ritz_history[k], e.ritz_history[k - 1] + 1e-12 * nrm);
    }
    EXPECT_GE(e.lambda_hat, sosp::testing::min_eig(A) - 1e-10 * nrm);
  }
}

TEST(MinEigpair, OneDimensionalReturnsPlusMinusOne) {
  const SymmetricOperator H(1, [](const DenseVector& v) { return scale(-4.0, v); });
  Rng rng(3, 3);
  const EigenEstimate e = min_eigpair(H, 0.1, 0.1, rng);
  EXPECT_EQ(std::abs(e.p_hat[0]), 1.0);
  EXPECT_DOUBLE_EQ(e.lambda_hat, -4.0);
  EXPECT_EQ(e.hvps_used, 1);
}

TEST(MinEigpair, RejectsBadArguments) {
  const SymmetricOperator H = dense_operator(Eigen::MatrixXd::Identity(2, 2));
  Rng rng(0, 0);
  EXPECT_THROW(min_eigpair(H, 0.0, 0.1, rng), ContractError);
  EXPECT_THROW(min_eigpair(H, 0.1, 1.0, rng), ContractError);
}

}  // namespace
}  // namespace sosp::meo
