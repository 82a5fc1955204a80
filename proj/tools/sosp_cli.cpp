// Command-line front end: run, sweep, validate, bounds.
//
// Exit codes: 0 all checks pass, 1 a validation check failed, 2 bad
// configuration or arguments, 3 file I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sosp/core/error.hpp"
#include "sosp/harness/ensemble.hpp"
#include "sosp/harness/experiment_config.hpp"
#include "sosp/harness/summary_io.hpp"
#include "sosp/harness/validate.hpp"
#include "sosp/theory/bounds.hpp"

namespace {

using namespace sosp;
using namespace sosp::harness;

struct Overrides {
  std::string config_path;
  std::optional<std::int64_t> seeds;
  std::optional<std::uint64_t> base_seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::string> policy;
  std::optional<std::string> sign;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "experiment config file (key = value)");
  cmd->add_option("--seeds", o.seeds, "number of seeded runs");
  cmd->add_option("--base-seed", o.base_seed, "base seed; run i uses stream i");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--policy", o.policy, "step-size policy")->check(CLI::IsMember({"short", "long"}));
  cmd->add_option("--sign", o.sign, "sign policy")->check(CLI::IsMember({"rademacher", "descent"}));
}

ExperimentConfig load(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? parse_config("") : load_config(o.config_path);
  if (o.seeds) c.seeds = *o.seeds;
  if (o.base_seed) c.base_seed = *o.base_seed;
  if (o.out) c.out = *o.out;
  if (o.workers) c.workers = *o.workers;
  if (o.policy) {
    c.tolerances.step_policy = *o.policy == "long" ? StepPolicy::LongStep : StepPolicy::ShortStep;
  }
  if (o.sign) {
    c.tolerances.sign_policy =
        *o.sign == "descent" ? SignPolicy::DescentAligned : SignPolicy::Rademacher;
  }
  c.validate();
  return c;
}

int report_and_exit(const EnsembleSummary& s) {
  const ValidationReport r = validate(s);
  std::printf("seeds %zu  mean T %.6g  median T %.6g  max T %lld  terminated %lld  failed %lld\n",
              s.rows.size(), s.aggregates.mean_T, s.aggregates.median_T,
              static_cast<long long>(s.aggregates.max_T),
              static_cast<long long>(s.aggregates.terminated),
              static_cast<long long>(s.aggregates.failed));
  std::cout << r.to_text();
  return r.passed() ? 0 : 1;
}

int cmd_run(const Overrides& o) {
  const ExperimentConfig c = load(o);
  const EnsembleSummary s = run_ensemble(c);
  write_summary(c.out, s);
  std::printf("wrote %s\n", (c.out / "summary.json").string().c_str());
  return report_and_exit(s);
}

int cmd_sweep(const Overrides& o) {
  const ExperimentConfig base = load(o);
  if (base.sweep_eps.empty()) throw ConfigError("sweep.eps", "sweep needs at least one value");
  bool all_pass = true;
  for (std::size_t i = 0; i < base.sweep_eps.size(); ++i) {
    ExperimentConfig c = base;
    const double eps = base.sweep_eps[i];
    if (c.preset == Preset::Sqrt || c.preset == Preset::CubeTwoThirds) {
      c.preset_eps = eps;
    } else {
      c.preset = Preset::None;
      c.tolerances.eps_g = eps;
      c.tolerances.eps_H = eps;
    }
    c.out = base.out / ("eps_" + std::to_string(i));
    const EnsembleSummary s = run_ensemble(c);
    write_summary(c.out, s);
    std::printf("== eps %.6g  eps_g %.6g  eps_H %.6g  -> %s\n", eps, s.tolerances.eps_g,
                s.tolerances.eps_H, c.out.string().c_str());
    all_pass = report_and_exit(s) == 0 && all_pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_validate(const std::string& path) { return report_and_exit(read_summary(path)); }

int cmd_bounds(const Overrides& o) {
  const ExperimentConfig c = load(o);
  const PreparedExperiment p = prepare_experiment(c);
  const ToleranceConfig& t = p.tolerances;
  const theory::BoundReport& b = p.bounds;
  const auto& problem = p.problem;

  std::printf("problem            %s (dim %zu)\n", std::string(to_string(c.problem)).c_str(),
              problem->dim());
  std::printf("eps_g, eps_H       %.6g, %.6g\n", t.eps_g, t.eps_H);
  std::printf("alpha, L, M        %.6g, %.6g, %.6g\n", t.alpha, t.L, t.M);
  std::printf("f(x0), f_bar       %.17g, %.17g\n", b.f0, t.f_bar);
  std::printf("C_eps              %.6g\n", b.c_eps);
  std::printf("E[T] bound         %.6g\n", b.expected_T_bound);
  std::printf("B, C, K            %.6g, %.6g, %.6g\n", b.B, b.C, b.K);
  std::printf("n (1 - delta)      %.6g   (delta %.3g, eta %d)\n", b.n_high_prob, t.delta, t.eta);
  std::printf("operations         %.6g\n", b.operation_complexity);
  std::printf("max_iter           %lld\n", static_cast<long long>(t.max_iter));
  std::printf("lanczos cap        %.6g\n", b.lanczos_cap);
  if (b.grad_sample_size) {
    std::printf("grad sample size   %lld\n", static_cast<long long>(*b.grad_sample_size));
  }
  if (b.hess_sample_size) {
    std::printf("hess sample size   %lld\n", static_cast<long long>(*b.hess_sample_size));
  }
  std::printf("union bound        xi = delta / (2 n) = %.6g\n", b.union_bound_xi);
  std::printf("                   keeps every oracle call within its error contract over n\n"
              "                   iterations with probability >= 1 - delta/2. Subsampled runs\n"
              "                   use the configured xi = %.3g instead.\n", t.xi);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized negative-curvature optimizer: experiments and bounds"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, bounds_o;
  std::string summary_path;
  auto* run = app.add_subcommand("run", "run one seeded ensemble and validate it");
  add_common(run, run_o);
  auto* sweep = app.add_subcommand("sweep", "run one ensemble per value of sweep.eps");
  add_common(sweep, sweep_o);
  auto* val = app.add_subcommand("validate", "re-check a stored summary.json");
  val->add_option("--summary", summary_path, "path to summary.json")->required();
  auto* bounds = app.add_subcommand("bounds", "print every closed-form bound for a config");
  add_common(bounds, bounds_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(run_o);
    if (*sweep) return cmd_sweep(sweep_o);
    if (*val) return cmd_validate(summary_path);
    if (*bounds) return cmd_bounds(bounds_o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
