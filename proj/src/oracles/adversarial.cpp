#include "sosp/oracles/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sosp/core/error.hpp"

namespace sosp::oracles {
namespace {

constexpr double kContractSlack = 1e-12;

DenseVector random_unit(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  double n2 = 0.0;
  while (n2 == 0.0) {
    n2 = 0.0;
    for (double& vi : v) {
      vi = rng.normal();
      n2 += vi * vi;
    }
  }
  return scale(1.0 / std::sqrt(n2), DenseVector(std::move(v)));
}

// Unit vector orthogonal to `against`, or nullopt when none exists (d = 1).
std::optional<DenseVector> random_orthogonal_unit(const DenseVector& against, Rng& rng) {
  const double an = norm(against);
  if (an == 0.0) return random_unit(against.size(), rng);
  if (against.size() == 1) return std::nullopt;
  const DenseVector axis = scale(1.0 / an, against);
  for (;;) {
    const DenseVector u = random_unit(against.size(), rng);
    const DenseVector projected = axpy(-dot(u, axis), axis, u);
    const double pn = norm(projected);
    if (pn > 1e-8) return scale(1.0 / pn, projected);
  }
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(grad_fraction >= 0.0)) throw ConfigError("noise.grad_fraction", "must be >= 0");
  if (!(hess_fraction >= 0.0)) throw ConfigError("noise.hess_fraction", "must be >= 0");
  if (!stress && grad_fraction > 1.0) {
    throw ConfigError("noise.grad_fraction", "exceeds 1; set noise.stress to allow it");
  }
  if (!stress && hess_fraction > 1.0) {
    throw ConfigError("noise.hess_fraction", "exceeds 1; set noise.stress to allow it");
  }
  if (!(grad_fraction < 3.0)) throw ConfigError("noise.grad_fraction", "must be < 3");
}

DenseVector adversarial_gradient(const DenseVector& exact_g, double eps_g, const NoiseSpec& spec,
                                 Rng& rng) {
  spec.validate();
  if (!(eps_g > 0.0)) throw ContractError("adversarial_gradient needs eps_g > 0");
  const double r = spec.grad_fraction / 3.0;
  if (r == 0.0) return exact_g;

  std::optional<DenseVector> direction;
  if (spec.direction_mode == DirectionMode::OrthogonalToGradient) {
    direction = random_orthogonal_unit(exact_g, rng);
  }
  // d = 1 with a nonzero gradient has no orthogonal direction.
  const DenseVector u = direction ? *direction : random_unit(exact_g.size(), rng);

  // Root of s = r ||grad_f + s u|| on the branch ||g|| >= eps_g.
  const double c = dot(exact_g, u);
  const double gn2 = dot(exact_g, exact_g);
  const double r2 = r * r;
  const double s_relative = (r2 * c + std::sqrt(r2 * r2 * c * c + (1.0 - r2) * r2 * gn2)) / (1.0 - r2);
  double s = r * eps_g;
  if (norm(axpy(s_relative, u, exact_g)) >= eps_g) s = s_relative;

  DenseVector g = axpy(s, u, exact_g);
  if (!spec.stress) {
    const double bound = std::max(eps_g, norm(g)) / 3.0;
    const double err = norm(g - exact_g);
    if (err > bound * (1.0 + kContractSlack) + kContractSlack * eps_g) {
      throw NumericError("adversarial gradient violated its error contract");
    }
  }
  return g;
}

SymmetricOperator adversarial_hessian(SymmetricOperator exact_H, double eps_H, const NoiseSpec& spec,
                                      Rng& rng) {
  spec.validate();
  if (!(eps_H > 0.0)) throw ContractError("adversarial_hessian needs eps_H > 0");
  const double magnitude = spec.hess_fraction * (2.0 / 9.0) * eps_H;
  if (magnitude == 0.0) return exact_H;

  const std::size_t dim = exact_H.dim();
  const DenseVector u = random_unit(dim, rng);
  std::optional<DenseVector> w;
  double sign = 1.0;
  if (dim > 1) {
    w = random_orthogonal_unit(u, rng);
    if (std::abs(norm(*w) - 1.0) > 1e-12 || std::abs(dot(u, *w)) > 1e-12) {
      throw NumericError("adversarial Hessian directions are not orthonormal");
    }
  } else {
    sign = static_cast<double>(rademacher(rng));
  }

  auto base = std::make_shared<SymmetricOperator>(std::move(exact_H));
  return SymmetricOperator(dim, [base, u, w, sign, magnitude](const DenseVector& v) {
    DenseVector hv = base->apply(v);
    hv = axpy(sign * magnitude * dot(u, v), u, hv);
    if (w) hv = axpy(-magnitude * dot(*w, v), *w, hv);
    return hv;
  });
}

AdversarialOracles::AdversarialOracles(std::shared_ptr<const problems::Problem> problem, double eps_g,
                                       double eps_H, NoiseSpec spec)
    : problem_(std::move(problem)), eps_g_(eps_g), eps_H_(eps_H), spec_(spec) {
  if (!problem_) throw ContractError("AdversarialOracles needs a problem");
  if (!(eps_g_ > 0.0 && eps_H_ > 0.0)) throw ContractError("AdversarialOracles needs positive tolerances");
  spec_.validate();
}

GradientEstimate AdversarialOracles::gradient(const DenseVector& x, Rng& rng) const {
  return {adversarial_gradient(problem_->gradient(x), eps_g_, spec_, rng), std::nullopt};
}

HessianEstimate AdversarialOracles::hessian(const DenseVector& x, Rng& rng) const {
  return {adversarial_hessian(problem_->hessian_operator(x), eps_H_, spec_, rng), std::nullopt};
}

}  // namespace sosp::oracles
