#include "sosp/harness/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <filesystem>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "sosp/core/dense_linalg.hpp"
#include "sosp/core/error.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/harness/trace_io.hpp"
#include "sosp/optimizer/optimizer.hpp"

namespace sosp::harness {
namespace {

DenseVector draw_start(const StartSpec& s, std::size_t dim, Rng rng) {
  std::vector<double> x(dim, s.value);
  for (double& xi : x) {
    switch (s.mode) {
      case StartMode::Constant:
        break;
      case StartMode::Uniform:
        xi += rng.uniform(-s.scale, s.scale);
        break;
      case StartMode::Gaussian:
        xi += s.scale * rng.normal();
        break;
    }
  }
  return DenseVector(std::move(x));
}

struct Shared {
  const ExperimentConfig& config;
  const problems::Problem& problem;
  const oracles::OracleBundle& bundle;
  const ToleranceConfig& tol;
  double c_eps;
};

SeedRow failed_row(std::int64_t i, double f0, const std::string& what) {
  SeedRow row;
  row.seed = i;
  row.failed = true;
  row.error = what;
  row.f0 = std::isfinite(f0) ? f0 : 0.0;
  return row;
}

SeedRow run_seed(const Shared& s, std::int64_t i, const DenseVector& x0) {
  SeedRow row;
  row.seed = i;
  row.f0 = s.problem.value(x0);
  try {
    row.expected_bound = theory::expected_iter_bound(row.f0, s.tol.f_bar, s.c_eps);
    row.n_high_prob = theory::high_prob_iters(row.f0, s.tol.f_bar, s.tol).n;

    Rng rng = Rng(s.config.base_seed, static_cast<std::uint64_t>(i)).split(1);
    RunResult r = optimizer::run(x0, s.bundle, s.tol, rng);

    row.terminated = r.terminated;
    row.T = r.T;
    row.gd_count = r.gd_count;
    row.nc_count = r.nc_count;
    row.grad_evals = r.total_grad_evals;
    row.hvps = r.total_hvps;
    row.region_violations = r.region_violations;
    row.f_final = s.problem.value(r.final_point);
    row.grad_norm_final = norm(s.problem.gradient(r.final_point));
    row.lambda_min_final = min_eigenvalue(s.problem.dense_hessian(r.final_point));
    if (!std::isfinite(row.f_final) || !std::isfinite(row.lambda_min_final)) {
      throw NumericError("non-finite diagnostics at the final point");
    }
    row.certificate_ok = row.terminated &&
                         row.grad_norm_final <= (4.0 / 3.0) * s.tol.eps_g + 1e-10 &&
                         row.lambda_min_final >= -(4.0 / 3.0) * s.tol.eps_H - 1e-10;

    const double gd_floor = s.tol.eps_g * s.tol.eps_g / (6.0 * s.tol.L);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const IterationRecord& rec = r.trace[k];
      row.grad_samples += rec.grad_samples.value_or(0);
      row.hess_samples += rec.hess_samples.value_or(0);
      if (rec.kind == StepKind::Terminated) continue;
      const double f_now = *rec.f_exact;
      const double f_next = k + 1 < r.trace.size() ? *r.trace[k + 1].f_exact : row.f_final;
      const double change = f_next - f_now;
      if (rec.kind == StepKind::GradientStep) {
        if (change > -gd_floor + 1e-10) row.descent_violations.push_back(rec.k);
      } else {
        row.nc_delta_sum += change;
        row.nc_delta_sumsq += change * change;
        ++row.nc_delta_count;
      }
    }

    if (s.config.write_traces) {
      write_trace(s.config.out / ("trace_" + std::to_string(i) + ".jsonl"), r.trace);
    }
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    return failed_row(i, row.f0, e.what());
  }
  return row;
}

}  // namespace

Aggregates aggregate(const std::vector<SeedRow>& rows) {
  Aggregates a;
  std::vector<std::int64_t> ts;
  for (const SeedRow& r : rows) {
    if (r.failed) {
      ++a.failed;
      continue;
    }
    if (r.terminated) ++a.terminated;
    ts.push_back(r.T);
  }
  if (ts.empty()) return a;
  double sum = 0.0;
  for (std::int64_t t : ts) sum += static_cast<double>(t);
  a.mean_T = sum / static_cast<double>(ts.size());
  std::sort(ts.begin(), ts.end());
  const std::size_t m = ts.size() / 2;
  a.median_T = ts.size() % 2 == 1 ? static_cast<double>(ts[m])
                                  : 0.5 * static_cast<double>(ts[m - 1] + ts[m]);
  a.max_T = ts.back();
  return a;
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config) {
  config.validate();
  PreparedExperiment p;
  p.problem = build_problem(config);
  p.tolerances = resolve_tolerances(config, *p.problem);
  ToleranceConfig& tol = p.tolerances;

  p.starts.reserve(static_cast<std::size_t>(config.seeds));
  double f0_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < config.seeds; ++i) {
    p.starts.push_back(draw_start(config.x0, p.problem->dim(),
                                  Rng(config.base_seed, static_cast<std::uint64_t>(i)).split(0)));
    const double f0 = p.problem->value(p.starts.back());
    if (f0 < tol.f_bar) throw ConfigError("f_bar", "exceeds f(x0) for seed " + std::to_string(i));
    f0_max = std::max(f0_max, f0);
  }
  if (!config.max_iter) {
    tol.max_iter = theory::default_max_iter(theory::high_prob_iters(f0_max, tol.f_bar, tol).n);
  }

  std::optional<theory::FiniteSumBounds> fsb;
  if (const auto* fs = dynamic_cast<const problems::FiniteSumProblem*>(p.problem.get())) {
    const DenseVector& x = p.starts.front();
    fsb = theory::FiniteSumBounds{fs->gradient_bound(x), fs->hessian_bound(x), norm(fs->gradient(x)),
                                  config.sampling == oracles::SamplingMode::OracleInformed};
  }
  p.bounds = theory::bound_report(f0_max, p.problem->dim(), tol, fsb);
  return p;
}

EnsembleSummary run_ensemble(const ExperimentConfig& config) {
  PreparedExperiment prep = prepare_experiment(config);
  const auto& problem = prep.problem;
  const ToleranceConfig& tol = prep.tolerances;
  const std::vector<DenseVector>& starts = prep.starts;

  EnsembleSummary summary;
  summary.config = config_echo(config);
  summary.tolerances = tol;
  summary.bounds = prep.bounds;
  summary.rows.resize(starts.size());

  if (config.write_traces) std::filesystem::create_directories(config.out);

  const auto bundle = build_bundle(config, problem, tol);
  const Shared shared{config, *problem, *bundle, tol,
                      theory::c_eps(tol.eps_g, tol.eps_H, tol.L, tol.M)};

  std::atomic<std::int64_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  auto worker = [&] {
    for (std::int64_t i = next++; i < config.seeds; i = next++) {
      try {
        summary.rows[static_cast<std::size_t>(i)] =
            run_seed(shared, i, starts[static_cast<std::size_t>(i)]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  const int n_workers =
      static_cast<int>(std::min<std::int64_t>(config.workers, config.seeds));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  summary.aggregates = aggregate(summary.rows);
  return summary;
}

}  // namespace sosp::harness
