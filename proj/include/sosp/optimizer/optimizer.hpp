#pragma once

#include <cstdint>
#include <optional>

#include "sosp/core/dense_vector.hpp"
#include "sosp/core/records.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/core/tolerance_config.hpp"
#include "sosp/oracles/oracle_bundle.hpp"

namespace sosp::optimizer {

struct StepDecision {
  StepKind kind = StepKind::Terminated;
  // Gradient step: g_k. Negative curvature step: sigma * p_hat.
  std::optional<DenseVector> direction;
  // Gradient step: -1/L. Negative curvature step: 2 alpha_k / M.
  std::optional<double> scale;
};

struct StepOutcome {
  StepDecision decision;
  DenseVector next;
  IterationRecord record;
};

/// alpha_k for a negative curvature step. Requires lambda_hat < -eps_H.
double choose_step_size(double lambda_hat, const ToleranceConfig& config);

/// Failure probability handed to each eigen-oracle call: delta / (2 max_iter).
double meo_failure_budget(const ToleranceConfig& config);

/// One iteration at x_k. The Hessian oracle is queried only when
/// ||g_k|| <= eps_g. Never evaluates f.
StepOutcome step(const DenseVector& x, const oracles::OracleBundle& bundle,
                 const ToleranceConfig& config, Rng& rng, std::int64_t k = 0);

/// Iterates `step` until termination or config.max_iter iterations. When the
/// bundle exposes diagnostics, each record carries f(x_k) and iterates
/// outside the problem's region are counted.
RunResult run(const DenseVector& x0, const oracles::OracleBundle& bundle,
              const ToleranceConfig& config, Rng& rng);

}  // namespace sosp::optimizer
