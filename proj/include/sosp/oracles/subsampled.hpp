#pragma once

#include <cstdint>
#include <memory>

#include "sosp/oracles/oracle_bundle.hpp"

namespace sosp::oracles {

enum class SamplingMode {
  // D = max{eps_g, ||grad f(x)||}; reads the exact gradient norm, so it is
  // only usable for validating the sample-size bound.
  OracleInformed,
  // D = eps_g; deployable.
  Practical,
};

struct SampledGradient {
  DenseVector g;
  std::int64_t sample_count = 0;
  bool oversized = false;  // sample_count > 1000 N
};

struct SampledHessian {
  SymmetricOperator H;
  std::int64_t sample_count = 0;
};

/// Mean of `batch` component gradients drawn uniformly with replacement.
DenseVector sampled_gradient_mean(const problems::FiniteSumProblem& problem, const DenseVector& x,
                                  std::int64_t batch, Rng& rng);

/// Mean of `batch` component Hessians drawn uniformly with replacement, as an
/// operator. Holds `problem` alive.
SymmetricOperator sampled_hessian_mean(std::shared_ptr<const problems::FiniteSumProblem> problem,
                                       const DenseVector& x, std::int64_t batch, Rng& rng);

/// Batch of ceil(16 (1 + sqrt(8 ln(1/xi)))^2 (G(x)/D)^2) component gradients,
/// with D per `mode`. Meets the relative gradient error bound with
/// probability >= 1 - xi.
SampledGradient subsampled_gradient(const problems::FiniteSumProblem& problem, const DenseVector& x,
                                    double eps_g, double xi, SamplingMode mode, Rng& rng);

/// Batch of ceil(484 ln(2d/xi) (K(x)/eps_H)^2) component Hessians. Meets
/// ||H - hess f(x)|| <= (2/9) eps_H with probability >= 1 - xi.
SampledHessian subsampled_hessian(std::shared_ptr<const problems::FiniteSumProblem> problem,
                                  const DenseVector& x, double eps_H, double xi, Rng& rng);

class SubsampledOracles final : public OracleBundle {
 public:
  SubsampledOracles(std::shared_ptr<const problems::FiniteSumProblem> problem, double eps_g,
                    double eps_H, double xi, SamplingMode mode);

  GradientEstimate gradient(const DenseVector& x, Rng& rng) const override;
  HessianEstimate hessian(const DenseVector& x, Rng& rng) const override;
  const problems::Problem* diagnostics() const override { return problem_.get(); }

 private:
  std::shared_ptr<const problems::FiniteSumProblem> problem_;
  double eps_g_;
  double eps_H_;
  double xi_;
  SamplingMode mode_;
};

}  // namespace sosp::oracles
