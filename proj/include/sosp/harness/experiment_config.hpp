#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sosp/core/tolerance_config.hpp"
#include "sosp/oracles/adversarial.hpp"
#include "sosp/oracles/subsampled.hpp"
#include "sosp/problems/problem.hpp"

namespace sosp::harness {

enum class ProblemKind { Quartic, MatrixFactorization, FiniteSum };
enum class OracleKind { Exact, Adversarial, Subsampled };
enum class StartMode { Constant, Uniform, Gaussian };
enum class Preset { None, Sqrt, CubeTwoThirds, StrictSaddle };

struct QuarticParams {
  std::size_t dim = 10;
  double b = 1.0;
  std::optional<double> radius;  // default 2 sqrt(b)
};

struct MatrixFactorizationParams {
  std::size_t dim = 6;
  std::size_t rank = 2;
  double sigma1 = 2.0;
  double sigma_r = 1.0;
  std::optional<double> gamma;  // default 4 sigma1
  std::uint64_t data_seed = 7;
};

struct FiniteSumParams {
  std::size_t samples = 500;
  std::size_t dim = 10;
  double lambda = 1.0;
  std::uint64_t data_seed = 11;
};

/// Starting point: every coordinate `value` (Constant), or value plus
/// uniform draws in [-scale, scale] / scale * N(0, 1) per coordinate.
struct StartSpec {
  StartMode mode = StartMode::Constant;
  double value = 0.0;
  double scale = 0.0;
};

/// One ensemble experiment. Fields marked optional are resolved from the
/// problem (L, M, f_bar), from eps_H (alpha) or from the bounds (max_iter).
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Quartic;
  QuarticParams quartic;
  MatrixFactorizationParams mf;
  FiniteSumParams fs;
  StartSpec x0;

  ToleranceConfig tolerances;  // L, M, f_bar, alpha, max_iter overwritten when unset below
  std::optional<double> alpha;
  std::optional<double> L;
  std::optional<double> M;
  std::optional<double> f_bar;
  std::optional<std::int64_t> max_iter;

  Preset preset = Preset::None;
  std::optional<double> preset_eps;

  OracleKind oracle = OracleKind::Exact;
  oracles::NoiseSpec noise;
  oracles::SamplingMode sampling = oracles::SamplingMode::OracleInformed;

  std::int64_t seeds = 1;
  std::uint64_t base_seed = 0;
  int workers = 1;
  std::filesystem::path out = "out";
  bool write_traces = true;

  std::vector<double> sweep_eps;

  /// Field-level checks that do not need the problem; throws ConfigError.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and bad
/// values throw ConfigError naming the key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Documented keys with their defaults, one per line in config syntax.
std::string default_config_text();

/// Flat key -> value echo of the resolved configuration, for summaries.
std::map<std::string, std::string> config_echo(const ExperimentConfig& config);

std::shared_ptr<const problems::Problem> build_problem(const ExperimentConfig& config);

/// Applies preset tolerances and fills L, M, f_bar and alpha from the
/// problem. max_iter is left to the ensemble, which knows every start.
ToleranceConfig resolve_tolerances(const ExperimentConfig& config, const problems::Problem& problem);

std::unique_ptr<oracles::OracleBundle> build_bundle(const ExperimentConfig& config,
                                                    std::shared_ptr<const problems::Problem> problem,
                                                    const ToleranceConfig& tol);

std::string_view to_string(ProblemKind kind);
std::string_view to_string(OracleKind kind);

}  // namespace sosp::harness
