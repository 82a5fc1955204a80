#include "sosp/problems/quartic.hpp"

#include <algorithm>
#include <cmath>

#include "sosp/core/error.hpp"

namespace sosp::problems {

QuarticDoubleWell::QuarticDoubleWell(std::vector<double> b, double radius) : b_(std::move(b)) {
  if (b_.empty()) throw ContractError("quartic needs d >= 1");
  double b_max = 0.0;
  double f_bar = 0.0;
  for (double bi : b_) {
    if (!(bi > 0.0 && std::isfinite(bi))) throw ContractError("quartic needs every b_i > 0");
    b_max = std::max(b_max, bi);
    f_bar -= bi * bi / 4.0;
  }
  if (!(radius >= 2.0 * std::sqrt(b_max))) {
    throw ContractError("quartic needs R >= 2 max sqrt(b_i)");
  }
  constants_ = {b_.size(), radius, 3.0 * radius * radius + b_max, 6.0 * radius, f_bar};
}

double QuarticDoubleWell::value(const DenseVector& x) const {
  check_dim(x);
  double f = 0.0;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    const double x2 = x[i] * x[i];
    f += x2 * x2 / 4.0 - b_[i] * x2 / 2.0;
  }
  return f;
}

DenseVector QuarticDoubleWell::gradient(const DenseVector& x) const {
  check_dim(x);
  std::vector<double> g(b_.size());
  for (std::size_t i = 0; i < b_.size(); ++i) g[i] = x[i] * x[i] * x[i] - b_[i] * x[i];
  return DenseVector(std::move(g));
}

DenseVector QuarticDoubleWell::hessian_vector(const DenseVector& x, const DenseVector& v) const {
  check_dim(x);
  check_dim(v);
  std::vector<double> hv(b_.size());
  for (std::size_t i = 0; i < b_.size(); ++i) hv[i] = (3.0 * x[i] * x[i] - b_[i]) * v[i];
  return DenseVector(std::move(hv));
}

bool QuarticDoubleWell::in_region(const DenseVector& x) const {
  return max_abs(x) <= constants_.region_radius;
}

std::shared_ptr<const QuarticDoubleWell> quartic_double_well(std::size_t d, std::vector<double> b,
                                                              double radius) {
  if (d == 0) throw ContractError("quartic needs d >= 1");
  if (b.size() == 1 && d > 1) b.assign(d, b.front());
  if (b.size() != d) throw ContractError("quartic: b must have 1 or d entries");
  return std::make_shared<const QuarticDoubleWell>(std::move(b), radius);
}

}  // namespace sosp::problems
