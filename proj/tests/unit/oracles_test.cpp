#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"
#include "sosp/oracles/adversarial.hpp"
#include "sosp/oracles/subsampled.hpp"
#include "sosp/problems/finite_sum_regression.hpp"
#include "sosp/problems/matrix_factorization.hpp"
#include "sosp/problems/quartic.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::oracles {
namespace {

using sosp::testing::gaussian_vector;
using sosp::testing::spectral_norm_sym;
using sosp::testing::to_dense;

TEST(ExactBundle, Examples) {
  Rng rng(0, 0);
  const auto q10 = exact_bundle(problems::quartic_double_well(10, {1.0}, 2.0));
  EXPECT_EQ(q10->gradient(DenseVector::zeros(10), rng).g, DenseVector::zeros(10));
  const auto q1 = exact_bundle(problems::quartic_double_well(1, {1.0}, 2.0));
  EXPECT_EQ(q1->gradient(DenseVector{2}, rng).g[0], 6.0);
  EXPECT_NE(q1->diagnostics(), nullptr);

  Eigen::MatrixXd Mstar = Eigen::MatrixXd::Zero(3, 3);
  Mstar(0, 0) = 4.0;
  const auto mf = exact_bundle(std::make_shared<const problems::MatrixFactorization>(
      problems::mf_spec_from_matrix(Mstar, 1, 8.0)));
  EXPECT_EQ(norm(mf->gradient(DenseVector{2, 0, 0}, rng).g), 0.0);
}

TEST(AdversarialGradient, ZeroFractionIsExact) {
  Rng rng(1, 0);
  NoiseSpec spec;
  spec.grad_fraction = 0.0;
  const DenseVector g{0.3, -2.0};
  EXPECT_EQ(adversarial_gradient(g, 0.1, spec, rng), g);
}

TEST(AdversarialGradient, SmallGradientBranch) {
  Rng rng(2, 0);
  const DenseVector zero = DenseVector::zeros(4);
  const DenseVector g = adversarial_gradient(zero, 0.3, NoiseSpec{}, rng);
  EXPECT_NEAR(norm(g), 0.1, 1e-15);
  EXPECT_NEAR(norm(g - zero), std::max(0.3, norm(g)) / 3.0, 1e-15);
}

TEST(AdversarialGradient, RelativeBranch) {
  Rng rng(3, 0);
  const DenseVector grad{3.0, 0.0, 0.0};
  const DenseVector g = adversarial_gradient(grad, 0.3, NoiseSpec{}, rng);
  const double e = norm(g - grad);
  EXPECT_NEAR(e, 1.0 / std::sqrt(8.0) * 3.0, 1e-12);  // (1/3) 3 / sqrt(1 - 1/9)
  EXPECT_NEAR(e, 1.0607, 1e-4);
  EXPECT_NEAR(norm(g), std::sqrt(9 + 1.125), 1e-12);
  EXPECT_NEAR(e / norm(g), 1.0 / 3.0, 1e-12);
}

TEST(AdversarialGradient, SaturatesContractOnRandomInputs) {
  Rng rng(4, 0);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = 1 + rng.index(12);
    const DenseVector grad = to_dense(gaussian_vector(rng, d, rng.uniform(0, 2)));
    NoiseSpec spec;
    spec.grad_fraction = rng.uniform(0, 1);
    spec.direction_mode = rng.index(2) ? DirectionMode::RandomUnit : DirectionMode::OrthogonalToGradient;
    const double eps_g = rng.uniform(0.01, 1);
    const DenseVector g = adversarial_gradient(grad, eps_g, spec, rng);
    const double target = spec.grad_fraction / 3.0 * std::max(eps_g, norm(g));
    EXPECT_NEAR(norm(g - grad), target, 1e-10 * std::max(1.0, target));
    EXPECT_LE(norm(g - grad), std::max(eps_g, norm(g)) / 3.0 * (1 + 1e-12) + 1e-15);
  }
}

TEST(AdversarialHessian, ZeroFractionIsExact) {
  Rng rng(5, 0);
  NoiseSpec spec;
  spec.hess_fraction = 0.0;
  const Eigen::MatrixXd A = sosp::testing::random_symmetric(rng, 4, 2.0);
  const SymmetricOperator H = adversarial_hessian(dense_operator(A), 0.5, spec, rng);
  EXPECT_LE((H.to_dense() - A).norm(), 0.0);
}

TEST(AdversarialHessian, PerturbationNormAndWeylBound) {
  Rng rng(6, 0);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  const SymmetricOperator H = adversarial_hessian(dense_operator(zero), 0.9, NoiseSpec{}, rng);
  const Eigen::MatrixXd Hd = H.to_dense();
  EXPECT_NEAR(spectral_norm_sym(Hd), 0.2, 1e-14);
  EXPECT_GE(sosp::testing::min_eig(Hd), -0.2 - 1e-14);
  EXPECT_LE(sosp::testing::min_eig(Hd), 0.2 + 1e-14);

  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 1 + rng.index(10);
    const Eigen::MatrixXd A = sosp::testing::random_symmetric(rng, d, rng.uniform(0.1, 5));
    NoiseSpec spec;
    spec.hess_fraction = rng.uniform(0, 1);
    const double eps_H = rng.uniform(0.01, 1);
    const Eigen::MatrixXd P = adversarial_hessian(dense_operator(A), eps_H, spec, rng).to_dense();
    const double mag = spec.hess_fraction * 2.0 / 9.0 * eps_H;
    EXPECT_NEAR(spectral_norm_sym(P - A), mag, 1e-12);
    const double shift = sosp::testing::min_eig(P) - sosp::testing::min_eig(A);
    EXPECT_LE(std::abs(shift), mag + 1e-12);
  }
}

TEST(NoiseSpec, FractionAboveOneNeedsStress) {
  NoiseSpec spec;
  spec.grad_fraction = 1.5;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.stress = true;
  EXPECT_NO_THROW(spec.validate());
  spec.grad_fraction = 3.0;
  EXPECT_THROW(spec.validate(), ConfigError);
  NoiseSpec h;
  h.hess_fraction = 2.0;
  EXPECT_THROW(h.validate(), ConfigError);
}

TEST(AdversarialOracles, ContractHoldsAgainstDiagnostics) {
  const auto p = problems::quartic_double_well(6, {1.0}, 2.0);
  const AdversarialOracles bundle(p, 0.1, 0.2, NoiseSpec{});
  Rng rng(7, 0);
  for (int i = 0; i < 200; ++i) {
    const DenseVector x = to_dense(sosp::testing::uniform_vector(rng, 6, -1.5, 1.5));
    const DenseVector g = bundle.gradient(x, rng).g;
    const DenseVector exact = p->gradient(x);
    EXPECT_NEAR(norm(g - exact), std::max(0.1, norm(g)) / 3.0, 1e-12);
    const Eigen::MatrixXd H = bundle.hessian(x, rng).H.to_dense();
    EXPECT_NEAR(spectral_norm_sym(H - p->dense_hessian(x)), 2.0 / 9.0 * 0.2, 1e-12);
  }
}

// Finite sum with identical components: every batch is exact.
class IdenticalComponents final : public problems::FiniteSumProblem {
 public:
  std::string name() const override { return "identical"; }
  const problems::ProblemConstants& constants() const override { return c_; }
  double value(const DenseVector& x) const override { return sample_value(0, x); }
  DenseVector gradient(const DenseVector& x) const override { return sample_gradient(0, x); }
  DenseVector hessian_vector(const DenseVector& x, const DenseVector& v) const override {
    return sample_hessian_vector(0, x, v);
  }
  bool in_region(const DenseVector&) const override { return true; }
  std::size_t num_samples() const override { return 7; }
  double sample_value(std::size_t, const DenseVector& x) const override {
    return 0.5 * dot(x, x) - x[0];
  }
  DenseVector sample_gradient(std::size_t, const DenseVector& x) const override {
    return x - DenseVector::unit(2, 0);
  }
  DenseVector sample_hessian_vector(std::size_t, const DenseVector&, const DenseVector& v) const override {
    return v;
  }
  double gradient_bound(const DenseVector& x) const override { return norm(gradient(x)) + 1; }
  double hessian_bound(const DenseVector&) const override { return 1.0; }

 private:
  problems::ProblemConstants c_{2, 0, 1, 1, -1};
};

TEST(Subsampled, IdenticalComponentsAreExact) {
  const auto p = std::make_shared<const IdenticalComponents>();
  Rng rng(8, 0);
  const DenseVector x{0.3, -0.7};
  EXPECT_LE(norm(sampled_gradient_mean(*p, x, 1, rng) - p->gradient(x)), 1e-15);
  const SampledGradient g = subsampled_gradient(*p, x, 0.1, 0.01, SamplingMode::Practical, rng);
  EXPECT_LE(norm(g.g - p->gradient(x)), 1e-14);
  const SymmetricOperator H = sampled_hessian_mean(p, x, 1, rng);
  EXPECT_LE((H.to_dense() - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-15);
}

TEST(Subsampled, SampleCountsFollowTheFormulas) {
  const auto p = problems::finite_sum_regression(100, 5, 1.0, Rng(1, 0));
  Rng rng(9, 0);
  const DenseVector x = to_dense(gaussian_vector(rng, 5));
  const SampledGradient gi = subsampled_gradient(*p, x, 0.1, 0.05, SamplingMode::OracleInformed, rng);
  const double D = std::max(0.1, norm(p->gradient(x)));
  EXPECT_EQ(gi.sample_count, theory::gradient_sample_size(p->gradient_bound(x), D, 0.05));
  const SampledGradient gp = subsampled_gradient(*p, x, 0.1, 0.05, SamplingMode::Practical, rng);
  EXPECT_EQ(gp.sample_count, theory::gradient_sample_size(p->gradient_bound(x), 0.1, 0.05));
  EXPECT_TRUE(gp.oversized);  // far beyond 1000 N for this tiny problem
  const SampledHessian h = subsampled_hessian(p, x, 0.5, 0.05, rng);
  EXPECT_EQ(h.sample_count, theory::hessian_sample_size(p->hessian_bound(x), 5, 0.5, 0.05));
}

TEST(Subsampled, PracticalNeverSmallerWhenGradientIsLarge) {
  const auto p = problems::finite_sum_regression(200, 6, 1.0, Rng(2, 0));
  Rng rng(10, 0);
  for (int i = 0; i < 200; ++i) {
    const DenseVector x = to_dense(gaussian_vector(rng, 6, 2.0));
    const double eps_g = rng.uniform(0.01, 0.5);
    if (norm(p->gradient(x)) < eps_g) continue;
    const double G = p->gradient_bound(x);
    EXPECT_GE(theory::gradient_sample_size(G, eps_g, 0.05),
              theory::gradient_sample_size(G, norm(p->gradient(x)), 0.05));
  }
}

TEST(Subsampled, SingleSampleGradientIsUnbiased) {
  const auto p = problems::finite_sum_regression(300, 4, 1.0, Rng(3, 0));
  Rng rng(11, 0);
  const DenseVector x = to_dense(gaussian_vector(rng, 4));
  const int n = 10000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4), sumsq = Eigen::VectorXd::Zero(4);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd g = sosp::testing::to_vec(sampled_gradient_mean(*p, x, 1, rng));
    sum += g;
    sumsq += g.cwiseProduct(g);
  }
  const Eigen::VectorXd mean = sum / n;
  const Eigen::VectorXd var = (sumsq - n * mean.cwiseProduct(mean)) / (n - 1);
  const Eigen::VectorXd exact = sosp::testing::to_vec(p->gradient(x));
  for (int j = 0; j < 4; ++j) {
    EXPECT_LE(std::abs(mean(j) - exact(j)), 4.0 * std::sqrt(var(j) / n)) << "component " << j;
  }
}

TEST(Subsampled, RejectsNonPositiveBounds) {
  class ZeroBounds final : public problems::FiniteSumProblem {
   public:
    std::string name() const override { return "zero"; }
    const problems::ProblemConstants& constants() const override { return c_; }
    double value(const DenseVector&) const override { return 0; }
    DenseVector gradient(const DenseVector& x) const override { return DenseVector::zeros(x.size()); }
    DenseVector hessian_vector(const DenseVector&, const DenseVector& v) const override {
      return DenseVector::zeros(v.size());
    }
    bool in_region(const DenseVector&) const override { return true; }
    std::size_t num_samples() const override { return 1; }
    double sample_value(std::size_t, const DenseVector&) const override { return 0; }
    DenseVector sample_gradient(std::size_t, const DenseVector& x) const override { return gradient(x); }
    DenseVector sample_hessian_vector(std::size_t, const DenseVector& x, const DenseVector& v) const override {
      return hessian_vector(x, v);
    }
    double gradient_bound(const DenseVector&) const override { return 0; }
    double hessian_bound(const DenseVector&) const override { return 0; }

   private:
    problems::ProblemConstants c_{1, 0, 1, 1, 0};
  };
  const auto p = std::make_shared<const ZeroBounds>();
  Rng rng(0, 0);
  EXPECT_THROW(subsampled_gradient(*p, DenseVector{0}, 0.1, 0.1, SamplingMode::Practical, rng),
               ContractError);
  EXPECT_THROW(subsampled_hessian(p, DenseVector{0}, 0.1, 0.1, rng), ContractError);
}

TEST(Subsampled, MonteCarloFrequenciesOnRegression) {
  // Formula-sized batches at a fixed x; the per-call failure rate must stay near xi.
  const auto p = problems::finite_sum_regression(500, 10, 1.0, Rng(11, 0));
  Rng rng(12, 0);
  const DenseVector x = to_dense(gaussian_vector(rng, 10, 0.5));
  const double eps_g = 0.1, xi = 0.01, eps_H = 0.5;
  const DenseVector exact = p->gradient(x);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const DenseVector g =
        subsampled_gradient(*p, x, eps_g, xi, SamplingMode::OracleInformed, rng).g;
    if (norm(g - exact) <= std::max(eps_g, norm(g)) / 3.0) ++ok;
  }
  EXPECT_GE(ok / 1000.0, 1 - xi - 0.01);

  const Eigen::MatrixXd Hx = p->dense_hessian(x);
  int okH = 0;
  for (int i = 0; i < 300; ++i) {
    const Eigen::MatrixXd H = subsampled_hessian(p, x, eps_H, xi, rng).H.to_dense();
    if (spectral_norm_sym(0.5 * (H + H.transpose()) - Hx) <= 2.0 / 9.0 * eps_H) ++okH;
  }
  EXPECT_GE(okH / 300.0, 1 - xi - 0.02);
}

}  // namespace
}  // namespace sosp::oracles
