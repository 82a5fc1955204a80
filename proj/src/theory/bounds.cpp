#include "sosp/theory/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sosp/core/error.hpp"

namespace sosp::theory {
namespace {

void require_positive(const char* name, double value) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw ContractError(std::string(name) + " must be positive and finite");
  }
}

void require_probability(const char* name, double value) {
  if (!(value > 0.0 && value < 1.0)) throw ContractError(std::string(name) + " must lie in (0, 1)");
}

constexpr double kMaxSampleSize = 4.0e18;

std::int64_t ceil_to_count(double raw) {
  if (!(raw < kMaxSampleSize)) throw ContractError("sample size overflows a 64-bit count");
  return static_cast<std::int64_t>(std::ceil(raw));
}

}  // namespace

double c_eps(double eps_g, double eps_H, double L, double M) {
  require_positive("eps_g", eps_g);
  require_positive("eps_H", eps_H);
  require_positive("L", L);
  require_positive("M", M);
  return std::min(eps_g * eps_g / (6.0 * L), 2.0 * eps_H * eps_H * eps_H / (9.0 * M * M));
}

double expected_iter_bound(double f0, double f_bar, double c_eps) {
  require_positive("c_eps", c_eps);
  if (!(f0 >= f_bar)) throw ContractError("f0 must be >= f_bar");
  return (f0 - f_bar) / c_eps;
}

HighProbBound high_prob_iters(double f0, double f_bar, const ToleranceConfig& config) {
  config.validate();
  const double ce = c_eps(config.eps_g, config.eps_H, config.L, config.M);
  const double gap_ratio = expected_iter_bound(f0, f_bar, ce);
  const double eta = static_cast<double>(config.eta);
  const double eps_h3 = config.eps_H * config.eps_H * config.eps_H;

  HighProbBound out;
  out.B = 1.0 + 18.0 * config.alpha * config.L / (config.M * config.eps_g);
  out.C = 2304.0 * config.M * config.M * config.alpha * config.alpha * config.eps_g * config.eps_g /
          (eps_h3 * eps_h3);
  const double from_delta = out.C * std::log(1.0 / config.delta);
  const double from_gap = 4.0 * eta * out.C * std::pow(gap_ratio, 1.0 / eta);
  const double from_self = 4.0 * eta * eta * std::pow(out.C, 1.0 + 1.0 / (eta - 1.0)) *
                           std::pow(out.B, 1.0 / (eta - 1.0));
  out.K = std::max({from_delta, from_gap, from_self});
  out.n = 2.0 * gap_ratio + out.B * out.K;
  return out;
}

Tolerances coupling_preset(Coupling regime, double eps, double L, double M) {
  require_positive("eps", eps);
  require_positive("L", L);
  require_positive("M", M);
  switch (regime) {
    case Coupling::Sqrt:
      return {eps, std::sqrt(eps * M)};
    case Coupling::CubeTwoThirds:
      return {eps, std::cbrt(3.0 * M * M * eps * eps / (4.0 * L))};
  }
  throw ContractError("unknown coupling regime");
}

double operation_complexity(double n, double eps_H) {
  require_positive("n", n);
  require_positive("eps_H", eps_H);
  return n / std::sqrt(eps_H);
}

double gradient_sample_size_raw(double G, double D, double xi) {
  require_positive("G", G);
  require_positive("D", D);
  require_probability("xi", xi);
  const double lead = 1.0 + std::sqrt(8.0 * std::log(1.0 / xi));
  const double ratio = G / D;
  return 16.0 * lead * lead * ratio * ratio;
}

double hessian_sample_size_raw(double K, std::size_t d, double eps_H, double xi) {
  require_positive("K", K);
  require_positive("eps_H", eps_H);
  require_probability("xi", xi);
  if (d == 0) throw ContractError("dimension must be positive");
  const double ratio = K / eps_H;
  return 484.0 * std::log(2.0 * static_cast<double>(d) / xi) * ratio * ratio;
}

std::int64_t gradient_sample_size(double G, double D, double xi) {
  return ceil_to_count(gradient_sample_size_raw(G, D, xi));
}

std::int64_t hessian_sample_size(double K, std::size_t d, double eps_H, double xi) {
  return ceil_to_count(hessian_sample_size_raw(K, d, eps_H, xi));
}

SampleSizes sample_sizes(double G, double K, double D, std::size_t d, double eps_H, double xi) {
  return {gradient_sample_size(G, D, xi), hessian_sample_size(K, d, eps_H, xi)};
}

Tolerances strict_saddle_targets(double sigma_r) {
  require_positive("sigma_r", sigma_r);
  return {std::pow(sigma_r, 1.5) / 24.0, sigma_r / 3.0};
}

double strict_saddle_radius(double sigma_r) {
  require_positive("sigma_r", sigma_r);
  return std::sqrt(sigma_r) / 3.0;
}

LipschitzConstants mf_constants(double Gamma) {
  require_positive("Gamma", Gamma);
  return {16.0 * Gamma, 24.0 * std::sqrt(Gamma)};
}

double lanczos_cap(std::size_t d, double delta, double norm_H, double accuracy) {
  if (d == 0) throw ContractError("dimension must be positive");
  require_probability("delta", delta);
  require_positive("accuracy", accuracy);
  if (!(norm_H >= 0.0 && std::isfinite(norm_H))) throw ContractError("norm_H must be finite and >= 0");
  const double log_term = std::log(25.0 * static_cast<double>(d) / (delta * delta));
  const double iters =
      1.0 + std::max(0.5 * log_term, 1.5 * log_term * std::sqrt(norm_H / accuracy));
  return std::min(static_cast<double>(d), iters);
}

double union_bound_xi(double delta, double n) {
  require_probability("delta", delta);
  require_positive("n", n);
  return delta / (2.0 * n);
}

BoundReport bound_report(double f0, std::size_t d, const ToleranceConfig& config,
                         const std::optional<FiniteSumBounds>& finite_sum) {
  config.validate();
  BoundReport report;
  report.f0 = f0;
  report.c_eps = c_eps(config.eps_g, config.eps_H, config.L, config.M);
  report.expected_T_bound = expected_iter_bound(f0, config.f_bar, report.c_eps);
  const HighProbBound hp = high_prob_iters(f0, config.f_bar, config);
  report.B = hp.B;
  report.C = hp.C;
  report.K = hp.K;
  report.n_high_prob = hp.n;
  report.operation_complexity = operation_complexity(hp.n, config.eps_H);
  const double meo_delta = config.delta / (2.0 * static_cast<double>(config.max_iter));
  report.lanczos_cap = lanczos_cap(d, meo_delta, config.L, config.eps_H / 9.0);
  report.union_bound_xi = union_bound_xi(config.delta, hp.n);
  if (finite_sum) {
    const double D = finite_sum->oracle_informed ? std::max(config.eps_g, finite_sum->grad_norm)
                                                 : config.eps_g;
    report.grad_sample_size = gradient_sample_size(finite_sum->G, D, config.xi);
    report.hess_sample_size = hessian_sample_size(finite_sum->K, d, config.eps_H, config.xi);
  }
  return report;
}

std::int64_t default_max_iter(double n_high_prob) {
  constexpr double kCeiling = 1.0e15;
  const double target = 10.0 * std::ceil(n_high_prob);
  if (!(target < kCeiling)) return static_cast<std::int64_t>(kCeiling);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(target));
}

}  // namespace sosp::theory
