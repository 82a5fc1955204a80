#include "sosp/oracles/subsampled.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "sosp/core/error.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::oracles {
namespace {

// Multiplicity of each drawn index; order of draws does not affect the mean.
std::vector<std::pair<std::size_t, std::int64_t>> draw_counts(std::size_t n, std::int64_t batch,
                                                              Rng& rng) {
  if (batch < 1) throw ContractError("sample batch must be >= 1");
  std::vector<std::int64_t> counts(n, 0);
  for (std::int64_t s = 0; s < batch; ++s) ++counts[rng.index(n)];
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] > 0) out.emplace_back(i, counts[i]);
  }
  return out;
}

}  // namespace

DenseVector sampled_gradient_mean(const problems::FiniteSumProblem& problem, const DenseVector& x,
                                  std::int64_t batch, Rng& rng) {
  const auto counts = draw_counts(problem.num_samples(), batch, rng);
  DenseVector sum = DenseVector::zeros(problem.dim());
  for (const auto& [i, c] : counts) sum = axpy(static_cast<double>(c), problem.sample_gradient(i, x), sum);
  return scale(1.0 / static_cast<double>(batch), sum);
}

SymmetricOperator sampled_hessian_mean(std::shared_ptr<const problems::FiniteSumProblem> problem,
                                       const DenseVector& x, std::int64_t batch, Rng& rng) {
  if (!problem) throw ContractError("sampled_hessian_mean needs a problem");
  auto counts = draw_counts(problem->num_samples(), batch, rng);
  const std::size_t dim = problem->dim();
  return SymmetricOperator(dim, [problem, x, batch, counts = std::move(counts)](const DenseVector& v) {
    DenseVector sum = DenseVector::zeros(problem->dim());
    for (const auto& [i, c] : counts) {
      sum = axpy(static_cast<double>(c), problem->sample_hessian_vector(i, x, v), sum);
    }
    return scale(1.0 / static_cast<double>(batch), sum);
  });
}

SampledGradient subsampled_gradient(const problems::FiniteSumProblem& problem, const DenseVector& x,
                                    double eps_g, double xi, SamplingMode mode, Rng& rng) {
  const double G = problem.gradient_bound(x);
  if (!(G > 0.0)) throw ContractError("gradient bound G(x) must be positive");
  const double D = mode == SamplingMode::OracleInformed ? std::max(eps_g, norm(problem.gradient(x)))
                                                         : eps_g;
  const std::int64_t batch = theory::gradient_sample_size(G, D, xi);
  const bool oversized =
      static_cast<double>(batch) > 1000.0 * static_cast<double>(problem.num_samples());
  return {sampled_gradient_mean(problem, x, batch, rng), batch, oversized};
}

SampledHessian subsampled_hessian(std::shared_ptr<const problems::FiniteSumProblem> problem,
                                  const DenseVector& x, double eps_H, double xi, Rng& rng) {
  if (!problem) throw ContractError("subsampled_hessian needs a problem");
  const double K = problem->hessian_bound(x);
  if (!(K > 0.0)) throw ContractError("Hessian bound K(x) must be positive");
  const std::int64_t batch = theory::hessian_sample_size(K, problem->dim(), eps_H, xi);
  SymmetricOperator H = sampled_hessian_mean(problem, x, batch, rng);
  return {std::move(H), batch};
}

SubsampledOracles::SubsampledOracles(std::shared_ptr<const problems::FiniteSumProblem> problem,
                                     double eps_g, double eps_H, double xi, SamplingMode mode)
    : problem_(std::move(problem)), eps_g_(eps_g), eps_H_(eps_H), xi_(xi), mode_(mode) {
  if (!problem_) throw ContractError("SubsampledOracles needs a problem");
}

GradientEstimate SubsampledOracles::gradient(const DenseVector& x, Rng& rng) const {
  SampledGradient s = subsampled_gradient(*problem_, x, eps_g_, xi_, mode_, rng);
  return {std::move(s.g), s.sample_count};
}

HessianEstimate SubsampledOracles::hessian(const DenseVector& x, Rng& rng) const {
  SampledHessian s = subsampled_hessian(problem_, x, eps_H_, xi_, rng);
  return {std::move(s.H), s.sample_count};
}

}  // namespace sosp::oracles
