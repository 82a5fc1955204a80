#pragma once

#include <cstdint>
#include <vector>

#include "sosp/core/dense_vector.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/meo/symmetric_operator.hpp"

namespace sosp::meo {

struct EigenEstimate {
  double lambda_hat;       // p_hat^T H p_hat
  DenseVector p_hat;       // unit norm
  std::int64_t hvps_used;
  double residual;         // ||H p_hat - lambda_hat p_hat||
  std::vector<double> ritz_history;  // smallest Ritz value after each product
};

/// Minimum-eigenvalue oracle: Lanczos with full reorthogonalization from a
/// uniformly random unit start.
///
/// Stops once the smallest Ritz pair has residual <= eps_H / 18 and Ritz value
/// below -eps_H, on Krylov breakdown, or at the product cap
///   min{d, 1 + max{1/2 ln(25d/delta'^2), 3/2 ln(25d/delta'^2) sqrt(||H|| / (eps_H/9))}},
/// where ||H|| is replaced by the largest Ritz magnitude seen so far. That
/// estimate never exceeds ||H||, so the count stays under the cap evaluated
/// with the true norm. With probability >= 1 - delta' over the start vector,
/// lambda_hat <= lambda_min(H) + eps_H / 9.
EigenEstimate min_eigpair(const SymmetricOperator& H, double eps_H, double delta_prime, Rng& rng);

}  // namespace sosp::meo
