#pragma once

#include <memory>

#include "sosp/oracles/oracle_bundle.hpp"

namespace sosp::oracles {

enum class DirectionMode { OrthogonalToGradient, RandomUnit };

/// How much of the permitted derivative error to inject.
///
/// Fractions in [0, 1] keep the oracle inside its error contract; larger
/// fractions (up to but excluding 3 for the gradient) are accepted only when
/// `stress` is set, and the post-hoc contract check is then skipped.
struct NoiseSpec {
  double grad_fraction = 1.0;
  double hess_fraction = 1.0;
  DirectionMode direction_mode = DirectionMode::OrthogonalToGradient;
  bool stress = false;

  void validate() const;
};

/// Returns g = grad_f + e with ||e|| = r max{eps_g, ||g||}, r = grad_fraction / 3.
///
/// The bound refers to the returned g, so ||e|| is the unique root of
/// s = r max{eps_g, ||grad_f + s u||} along the chosen unit direction u. For u
/// orthogonal to grad_f this is s = r ||grad_f|| / sqrt(1 - r^2) when that is at
/// least r eps_g, and s = r eps_g otherwise.
DenseVector adversarial_gradient(const DenseVector& exact_g, double eps_g, const NoiseSpec& spec,
                                 Rng& rng);

/// H = exact_H + c (2/9) eps_H (u u^T - w w^T) with u, w orthonormal and random,
/// c = hess_fraction, so ||H - exact_H|| = c (2/9) eps_H. For d = 1 the
/// perturbation is +-c (2/9) eps_H.
SymmetricOperator adversarial_hessian(SymmetricOperator exact_H, double eps_H, const NoiseSpec& spec,
                                      Rng& rng);

/// Exact derivatives corrupted by adversarial_gradient / adversarial_hessian.
/// Every gradient call re-checks the error contract against the exact gradient.
class AdversarialOracles final : public OracleBundle {
 public:
  AdversarialOracles(std::shared_ptr<const problems::Problem> problem, double eps_g, double eps_H,
                     NoiseSpec spec);

  GradientEstimate gradient(const DenseVector& x, Rng& rng) const override;
  HessianEstimate hessian(const DenseVector& x, Rng& rng) const override;
  const problems::Problem* diagnostics() const override { return problem_.get(); }

 private:
  std::shared_ptr<const problems::Problem> problem_;
  double eps_g_;
  double eps_H_;
  NoiseSpec spec_;
};

}  // namespace sosp::oracles
