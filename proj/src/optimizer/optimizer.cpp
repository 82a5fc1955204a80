#include "sosp/optimizer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sosp/core/error.hpp"
#include "sosp/meo/lanczos.hpp"

namespace sosp::optimizer {

double choose_step_size(double lambda_hat, const ToleranceConfig& config) {
  if (!(lambda_hat < -config.eps_H)) {
    throw ContractError("choose_step_size requires lambda_hat < -eps_H");
  }
  switch (config.step_policy) {
    case StepPolicy::ShortStep:
      return config.eps_H;
    case StepPolicy::LongStep:
      return std::min(config.alpha, std::abs(lambda_hat));
  }
  throw ContractError("unknown step policy");
}

double meo_failure_budget(const ToleranceConfig& config) {
  return config.delta / (2.0 * static_cast<double>(config.max_iter));
}

StepOutcome step(const DenseVector& x, const oracles::OracleBundle& bundle,
                 const ToleranceConfig& config, Rng& rng, std::int64_t k) {
  oracles::GradientEstimate ge = bundle.gradient(x, rng);
  if (ge.g.size() != x.size()) throw ContractError("gradient oracle returned wrong dimension");

  IterationRecord rec;
  rec.k = k;
  rec.grad_norm_est = norm(ge.g);
  rec.grad_samples = ge.samples;

  if (rec.grad_norm_est > config.eps_g) {
    const double s = -1.0 / config.L;
    DenseVector next = axpy(s, ge.g, x);
    rec.kind = StepKind::GradientStep;
    return {StepDecision{StepKind::GradientStep, std::move(ge.g), s}, std::move(next), rec};
  }

  oracles::HessianEstimate he = bundle.hessian(x, rng);
  if (he.H.dim() != x.size()) throw ContractError("Hessian oracle returned wrong dimension");
  meo::EigenEstimate est = meo::min_eigpair(he.H, config.eps_H, meo_failure_budget(config), rng);
  rec.lambda_hat = est.lambda_hat;
  rec.hvp_count = est.hvps_used;
  rec.hess_samples = he.samples;

  if (!(est.lambda_hat < -config.eps_H)) {
    rec.kind = StepKind::Terminated;
    return {StepDecision{StepKind::Terminated, std::nullopt, std::nullopt}, x, rec};
  }

  int sigma = 1;
  if (config.sign_policy == SignPolicy::Rademacher) {
    sigma = rademacher(rng);
  } else if (dot(ge.g, est.p_hat) > 0.0) {
    sigma = -1;
  }
  const double alpha_k = choose_step_size(est.lambda_hat, config);
  const double s = 2.0 * alpha_k / config.M;
  DenseVector dir = scale(static_cast<double>(sigma), est.p_hat);
  DenseVector next = axpy(s, dir, x);
  rec.kind = StepKind::NegativeCurvatureStep;
  rec.sigma = sigma;
  rec.alpha_k = alpha_k;
  return {StepDecision{StepKind::NegativeCurvatureStep, std::move(dir), s}, std::move(next), rec};
}

RunResult run(const DenseVector& x0, const oracles::OracleBundle& bundle,
              const ToleranceConfig& config, Rng& rng) {
  config.validate();
  const problems::Problem* diag = bundle.diagnostics();
  RunResult out{.final_point = x0, .trace = {}, .final_f_exact = std::nullopt};
  DenseVector x = x0;

  for (std::int64_t k = 0; k < config.max_iter; ++k) {
    if (diag != nullptr && !diag->in_region(x)) ++out.region_violations;
    StepOutcome so = step(x, bundle, config, rng, k);
    if (diag != nullptr) so.record.f_exact = diag->value(x);
    ++out.total_grad_evals;
    out.total_hvps += so.record.hvp_count;
    out.trace.push_back(so.record);

    if (so.decision.kind == StepKind::Terminated) {
      out.terminated = true;
      break;
    }
    if (so.decision.kind == StepKind::GradientStep) {
      ++out.gd_count;
    } else {
      ++out.nc_count;
    }
    x = std::move(so.next);
  }

  out.T = out.gd_count + out.nc_count;
  out.final_point = x;
  if (diag != nullptr) out.final_f_exact = diag->value(x);
  return out;
}

}  // namespace sosp::optimizer
