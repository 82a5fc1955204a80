#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "sosp/core/dense_vector.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/meo/symmetric_operator.hpp"
#include "sosp/problems/problem.hpp"

namespace sosp::oracles {

struct GradientEstimate {
  DenseVector g;
  std::optional<std::int64_t> samples;  // component gradients used, when subsampled
};

struct HessianEstimate {
  SymmetricOperator H;
  std::optional<std::int64_t> samples;  // component Hessians per product, when subsampled
};

/// Source of inexact derivatives for the optimizer.
///
/// `diagnostics()` is an optional exact channel used only to record f and to
/// check certificates; the optimizer's decisions never read it.
class OracleBundle {
 public:
  virtual ~OracleBundle() = default;

  virtual GradientEstimate gradient(const DenseVector& x, Rng& rng) const = 0;
  virtual HessianEstimate hessian(const DenseVector& x, Rng& rng) const = 0;
  virtual const problems::Problem* diagnostics() const = 0;
};

/// g = grad f(x), H = hess f(x).
class ExactOracles final : public OracleBundle {
 public:
  explicit ExactOracles(std::shared_ptr<const problems::Problem> problem);

  GradientEstimate gradient(const DenseVector& x, Rng& rng) const override;
  HessianEstimate hessian(const DenseVector& x, Rng& rng) const override;
  const problems::Problem* diagnostics() const override { return problem_.get(); }

 private:
  std::shared_ptr<const problems::Problem> problem_;
};

std::unique_ptr<OracleBundle> exact_bundle(std::shared_ptr<const problems::Problem> problem);

}  // namespace sosp::oracles
