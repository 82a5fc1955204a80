#pragma once

#include <string>
#include <vector>

#include "sosp/harness/ensemble.hpp"

namespace sosp::harness {

struct Check {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool passed() const;
  std::string to_text() const;
};

/// Re-checks a summary against the theory:
///   expected_T    mean T <= mean per-seed (f0 - f_bar) / C_eps
///   high_prob_T   fraction of runs with T > n (or no termination) <= delta
///   certificate   every terminated run is a (4/3 eps_g, 4/3 eps_H) point
///   gd_descent    every gradient step decreased f by eps_g^2/(6L)
///   nc_descent    pooled NC mean change <= -2 eps_H^3/(9 M^2) + 3 SE
///                 (Rademacher sign policy only)
///   failed_runs   no seed aborted
ValidationReport validate(const EnsembleSummary& summary);

/// Pooled mean and standard error of the NC-step f changes across rows.
struct PooledNc {
  std::int64_t count = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};
PooledNc pool_nc_deltas(const std::vector<SeedRow>& rows);

}  // namespace sosp::harness
