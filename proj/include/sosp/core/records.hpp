#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sosp/core/dense_vector.hpp"

namespace sosp {

enum class StepKind { GradientStep, NegativeCurvatureStep, Terminated };

std::string_view to_string(StepKind kind);
StepKind step_kind_from_string(std::string_view name);

/// One iteration of the optimizer, taken at iterate x_k.
struct IterationRecord {
  std::int64_t k = 0;
  StepKind kind = StepKind::Terminated;
  double grad_norm_est = 0.0;          // ||g_k||
  std::optional<double> lambda_hat;    // present iff the eigen-oracle ran
  std::optional<int> sigma;
  std::optional<double> alpha_k;
  std::int64_t hvp_count = 0;
  std::optional<std::int64_t> grad_samples;
  std::optional<std::int64_t> hess_samples;
  std::optional<double> f_exact;       // f(x_k), diagnostics only

  bool operator==(const IterationRecord&) const = default;
};

struct RunResult {
  DenseVector final_point;
  bool terminated = false;
  std::int64_t T = 0;
  std::int64_t gd_count = 0;
  std::int64_t nc_count = 0;
  std::int64_t total_grad_evals = 0;
  std::int64_t total_hvps = 0;
  std::vector<IterationRecord> trace;

  // f at final_point when the bundle exposes exact diagnostics.
  std::optional<double> final_f_exact;
  // Iterates outside the region where the problem's L and M hold.
  std::int64_t region_violations = 0;
};

}  // namespace sosp
