#include "sosp/meo/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"
#include "sosp/meo/tridiagonal.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::meo {
namespace {

Eigen::VectorXd random_unit(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.normal();
    n = v.norm();
  }
  return v / n;
}

}  // namespace

EigenEstimate min_eigpair(const SymmetricOperator& H, double eps_H, double delta_prime, Rng& rng) {
  if (H.dim() == 0) throw ContractError("min_eigpair needs dim >= 1");
  if (!(eps_H > 0.0)) throw ContractError("min_eigpair needs eps_H > 0");
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw ContractError("min_eigpair needs delta' in (0, 1)");
  }

  const auto dim = static_cast<Eigen::Index>(H.dim());
  const double accuracy = eps_H / 9.0;
  const double residual_target = eps_H / 18.0;

  // Columns of basis are the Lanczos vectors q_j, columns of images are H q_j.
  Eigen::MatrixXd basis(dim, dim);
  Eigen::MatrixXd images(dim, dim);
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> history;

  basis.col(0) = random_unit(dim, rng);
  double norm_estimate = 0.0;

  for (Eigen::Index j = 0;; ++j) {
    images.col(j) = to_eigen(H.apply(from_eigen(basis.col(j))));
    const std::int64_t products = j + 1;

    const double a = basis.col(j).dot(images.col(j));
    Eigen::VectorXd r = images.col(j) - a * basis.col(j);
    if (j > 0) r -= betas.back() * basis.col(j - 1);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const auto q = basis.leftCols(j + 1);
      r -= q * (q.transpose() * r);
    }
    alphas.push_back(a);
    const double b = r.norm();

    const TridiagonalEigen ritz = tridiagonal_eigen(alphas, betas);
    history.push_back(ritz.values.front());
    norm_estimate = std::max({norm_estimate, std::abs(ritz.values.front()),
                              std::abs(ritz.values.back())});

    const Eigen::VectorXd s = ritz.vectors.col(0);
    Eigen::VectorXd p = basis.leftCols(j + 1) * s;
    Eigen::VectorXd hp = images.leftCols(j + 1) * s;
    const double pn = p.norm();
    p /= pn;
    hp /= pn;
    const double lambda = p.dot(hp);
    const double residual = (hp - lambda * p).norm();

    const double cap = std::floor(theory::lanczos_cap(H.dim(), delta_prime, norm_estimate, accuracy));
    const bool breakdown = b <= 1e-12 * std::max(norm_estimate, 1e-300) || b == 0.0;
    // A small residual only shows lambda is near some eigenvalue of H, not the
    // smallest one, so it ends the run only once lambda already certifies
    // curvature below -eps_H. An estimate that would stop the optimizer runs
    // to the cap.
    const bool converged = residual <= residual_target && lambda < -eps_H;
    if (converged || breakdown || static_cast<double>(products) >= cap ||
        products == static_cast<std::int64_t>(dim)) {
      // Re-normalize so the returned direction is unit to machine precision.
      const double pn2 = p.norm();
      p /= pn2;
      hp /= pn2;
      return EigenEstimate{p.dot(hp), from_eigen(p), products, (hp - p.dot(hp) * p).norm(),
                           std::move(history)};
    }

    betas.push_back(b);
    basis.col(j + 1) = r / b;
  }
}

}  // namespace sosp::meo
