#pragma once

#include <cstdint>
#include <string_view>

namespace sosp {

enum class StepPolicy {
  ShortStep,  // alpha_k = eps_H
  LongStep,   // alpha_k = min(alpha, |lambda_hat|)
};

enum class SignPolicy {
  Rademacher,      // sigma drawn uniformly from {+1, -1}
  DescentAligned,  // sigma * g^T p <= 0, ties to +1; comparison mode only
};

struct ToleranceConfig {
  double eps_g = 1e-1;
  double eps_H = 1e-1;
  double alpha = 1e-1;  // cap on the negative curvature step scale
  double L = 1.0;       // gradient Lipschitz constant
  double M = 1.0;       // Hessian Lipschitz constant
  double f_bar = 0.0;   // lower bound on f; read by the bounds only
  double delta = 0.1;
  double xi = 0.01;
  int eta = 2;
  std::int64_t max_iter = 1'000'000;
  StepPolicy step_policy = StepPolicy::ShortStep;
  SignPolicy sign_policy = SignPolicy::Rademacher;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

std::string_view to_string(StepPolicy policy);
std::string_view to_string(SignPolicy policy);

}  // namespace sosp
