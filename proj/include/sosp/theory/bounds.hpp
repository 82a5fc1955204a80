#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sosp/core/tolerance_config.hpp"

namespace sosp::theory {

// Closed-form complexity bounds for the randomized negative-curvature method.
// Every function is pure; invalid inputs throw ContractError.

/// Guaranteed per-iteration decrease floor min(eps_g^2/(6L), 2 eps_H^3/(9 M^2)).
double c_eps(double eps_g, double eps_H, double L, double M);

/// Bound on E[T]: (f0 - f_bar) / c_eps.
double expected_iter_bound(double f0, double f_bar, double c_eps);

struct HighProbBound {
  double n = 0.0;
  double B = 0.0;
  double C = 0.0;
  double K = 0.0;
};

/// Iteration count n that suffices with probability >= 1 - delta, together
/// with the constants it is assembled from. Uses config.{eps_g, eps_H, alpha,
/// L, M, delta, eta}.
HighProbBound high_prob_iters(double f0, double f_bar, const ToleranceConfig& config);

enum class Coupling {
  Sqrt,           // eps_H = sqrt(eps * M)
  CubeTwoThirds,  // eps_g^2/(6L) = 2 eps_H^3/(9 M^2)
};

struct Tolerances {
  double eps_g = 0.0;
  double eps_H = 0.0;
};

Tolerances coupling_preset(Coupling regime, double eps, double L, double M);

/// Gradient evaluations plus Hessian-vector products: n * eps_H^{-1/2}.
double operation_complexity(double n, double eps_H);

/// 16 (1 + sqrt(8 ln(1/xi)))^2 (G / D)^2, before rounding up.
double gradient_sample_size_raw(double G, double D, double xi);
/// 484 ln(2d/xi) (K / eps_H)^2, before rounding up.
double hessian_sample_size_raw(double K, std::size_t d, double eps_H, double xi);

std::int64_t gradient_sample_size(double G, double D, double xi);
std::int64_t hessian_sample_size(double K, std::size_t d, double eps_H, double xi);

struct SampleSizes {
  std::int64_t grad_size = 0;
  std::int64_t hess_size = 0;
};

SampleSizes sample_sizes(double G, double K, double D, std::size_t d, double eps_H, double xi);

/// Tolerances under which every approximate second-order point of the
/// symmetric matrix factorization objective lies near a global minimum.
Tolerances strict_saddle_targets(double sigma_r);

/// Companion closeness radius (1/3) sigma_r^{1/2} of the strict-saddle property.
double strict_saddle_radius(double sigma_r);

struct LipschitzConstants {
  double L = 0.0;
  double M = 0.0;
};

/// Constants of f(U) = 1/2 ||U U^T - M*||_F^2 inside ||U||^2 < Gamma.
LipschitzConstants mf_constants(double Gamma);

/// Lanczos matrix-vector product cap
///   min{d, 1 + max{1/2 ln(25 d / delta^2), 3/2 ln(25 d / delta^2) sqrt(normH / accuracy)}}.
double lanczos_cap(std::size_t d, double delta, double norm_H, double accuracy);

/// Per-iteration oracle failure tolerance that keeps the union bound over n
/// iterations at delta / 2.
double union_bound_xi(double delta, double n);

struct BoundReport {
  double f0 = 0.0;
  double c_eps = 0.0;
  double expected_T_bound = 0.0;
  double B = 0.0;
  double C = 0.0;
  double K = 0.0;
  double n_high_prob = 0.0;
  double operation_complexity = 0.0;
  double lanczos_cap = 0.0;
  double union_bound_xi = 0.0;
  // Only for finite-sum problems, evaluated at the starting point.
  std::optional<std::int64_t> grad_sample_size;
  std::optional<std::int64_t> hess_sample_size;
};

struct FiniteSumBounds {
  double G = 0.0;
  double K = 0.0;
  double grad_norm = 0.0;
  bool oracle_informed = true;
};

/// Assembles every bound for a starting value f0 on a problem of dimension d.
/// The Lanczos cap uses L as the bound on the Hessian norm.
BoundReport bound_report(double f0, std::size_t d, const ToleranceConfig& config,
                         const std::optional<FiniteSumBounds>& finite_sum = std::nullopt);

/// 10 x ceil(n), saturating at a large positive value.
std::int64_t default_max_iter(double n_high_prob);

}  // namespace sosp::theory
