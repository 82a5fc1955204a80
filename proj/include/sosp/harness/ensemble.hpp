#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sosp/core/dense_vector.hpp"
#include "sosp/core/tolerance_config.hpp"
#include "sosp/harness/experiment_config.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::harness {

/// Outcome of one seeded run plus the exact-diagnostic checks made on it.
struct SeedRow {
  std::int64_t seed = 0;  // index i; the run uses stream i of base_seed
  bool failed = false;
  std::string error;

  bool terminated = false;
  std::int64_t T = 0;
  std::int64_t gd_count = 0;
  std::int64_t nc_count = 0;
  std::int64_t grad_evals = 0;
  std::int64_t hvps = 0;
  std::int64_t grad_samples = 0;
  std::int64_t hess_samples = 0;

  double f0 = 0.0;
  double f_final = 0.0;
  double grad_norm_final = 0.0;   // exact ||grad f(x_T)||
  double lambda_min_final = 0.0;  // exact lambda_min(hess f(x_T))
  bool certificate_ok = false;    // meaningful only when terminated

  double expected_bound = 0.0;  // (f0 - f_bar) / C_eps for this start
  double n_high_prob = 0.0;

  std::vector<std::int64_t> descent_violations;  // k of gradient steps short of eps_g^2/(6L)
  // f(x_{k+1}) - f(x_k) over negative curvature steps.
  double nc_delta_sum = 0.0;
  double nc_delta_sumsq = 0.0;
  std::int64_t nc_delta_count = 0;
  std::int64_t region_violations = 0;

  bool operator==(const SeedRow&) const = default;
};

struct Aggregates {
  double mean_T = 0.0;
  double median_T = 0.0;
  std::int64_t max_T = 0;
  std::int64_t terminated = 0;
  std::int64_t failed = 0;

  bool operator==(const Aggregates&) const = default;
};

/// Recomputes the aggregates from rows; failed rows are excluded from the T
/// statistics.
Aggregates aggregate(const std::vector<SeedRow>& rows);

struct EnsembleSummary {
  std::map<std::string, std::string> config;
  ToleranceConfig tolerances;
  theory::BoundReport bounds;  // evaluated at the largest f(x0) over seeds
  std::vector<SeedRow> rows;   // ordered by seed
  Aggregates aggregates;
};

/// Everything an ensemble needs before the first run: the problem, fully
/// resolved tolerances (max_iter included), one start per seed and the bound
/// report at the largest f(x0).
struct PreparedExperiment {
  std::shared_ptr<const problems::Problem> problem;
  ToleranceConfig tolerances;
  std::vector<DenseVector> starts;
  theory::BoundReport bounds;
};

PreparedExperiment prepare_experiment(const ExperimentConfig& config);

/// Runs the optimizer once per seed on `config.workers` threads. Seed i
/// draws its start from Rng(base_seed, i).split(0) and runs on
/// Rng(base_seed, i).split(1), so the result does not depend on scheduling.
/// Writes trace_<i>.jsonl under config.out when config.write_traces is set.
EnsembleSummary run_ensemble(const ExperimentConfig& config);

}  // namespace sosp::harness
