#include "sosp/oracles/oracle_bundle.hpp"

#include "sosp/core/error.hpp"

namespace sosp::oracles {

ExactOracles::ExactOracles(std::shared_ptr<const problems::Problem> problem)
    : problem_(std::move(problem)) {
  if (!problem_) throw ContractError("ExactOracles needs a problem");
}

GradientEstimate ExactOracles::gradient(const DenseVector& x, Rng&) const {
  return {problem_->gradient(x), std::nullopt};
}

HessianEstimate ExactOracles::hessian(const DenseVector& x, Rng&) const {
  return {problem_->hessian_operator(x), std::nullopt};
}

std::unique_ptr<OracleBundle> exact_bundle(std::shared_ptr<const problems::Problem> problem) {
  return std::make_unique<ExactOracles>(std::move(problem));
}

}  // namespace sosp::oracles
