#include "sosp/harness/experiment_config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "sosp/core/error.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/problems/finite_sum_regression.hpp"
#include "sosp/problems/matrix_factorization.hpp"
#include "sosp/problems/quartic.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::harness {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(out)) {
    throw ConfigError(key, "expected a finite number, got '" + v + "'");
  }
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  const std::int64_t n = parse_int(key, v);
  if (n < 1) throw ConfigError(key, "must be >= 1");
  return static_cast<std::size_t>(n);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

template <typename T, typename F>
std::optional<T> parse_auto(const std::string& v, F&& parse) {
  if (v == "auto") return std::nullopt;
  return parse();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "auto";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"problem",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "quartic") c.problem = ProblemKind::Quartic;
         else if (v == "matrix_factorization") c.problem = ProblemKind::MatrixFactorization;
         else if (v == "finite_sum") c.problem = ProblemKind::FiniteSum;
         else throw ConfigError(k, "expected quartic, matrix_factorization or finite_sum");
       }},
      {"quartic.dim", [](auto& c, auto& k, auto& v) { c.quartic.dim = parse_size(k, v); }},
      {"quartic.b", [](auto& c, auto& k, auto& v) { c.quartic.b = parse_double(k, v); }},
      {"quartic.radius",
       [](auto& c, auto& k, auto& v) {
         c.quartic.radius = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"mf.dim", [](auto& c, auto& k, auto& v) { c.mf.dim = parse_size(k, v); }},
      {"mf.rank", [](auto& c, auto& k, auto& v) { c.mf.rank = parse_size(k, v); }},
      {"mf.sigma1", [](auto& c, auto& k, auto& v) { c.mf.sigma1 = parse_double(k, v); }},
      {"mf.sigma_r", [](auto& c, auto& k, auto& v) { c.mf.sigma_r = parse_double(k, v); }},
      {"mf.gamma",
       [](auto& c, auto& k, auto& v) {
         c.mf.gamma = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"mf.data_seed", [](auto& c, auto& k, auto& v) { c.mf.data_seed = parse_uint(k, v); }},
      {"fs.samples", [](auto& c, auto& k, auto& v) { c.fs.samples = parse_size(k, v); }},
      {"fs.dim", [](auto& c, auto& k, auto& v) { c.fs.dim = parse_size(k, v); }},
      {"fs.lambda", [](auto& c, auto& k, auto& v) { c.fs.lambda = parse_double(k, v); }},
      {"fs.data_seed", [](auto& c, auto& k, auto& v) { c.fs.data_seed = parse_uint(k, v); }},
      {"x0.mode",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "constant") c.x0.mode = StartMode::Constant;
         else if (v == "uniform") c.x0.mode = StartMode::Uniform;
         else if (v == "gaussian") c.x0.mode = StartMode::Gaussian;
         else throw ConfigError(k, "expected constant, uniform or gaussian");
       }},
      {"x0.value", [](auto& c, auto& k, auto& v) { c.x0.value = parse_double(k, v); }},
      {"x0.scale", [](auto& c, auto& k, auto& v) { c.x0.scale = parse_double(k, v); }},
      {"eps_g", [](auto& c, auto& k, auto& v) { c.tolerances.eps_g = parse_double(k, v); }},
      {"eps_H", [](auto& c, auto& k, auto& v) { c.tolerances.eps_H = parse_double(k, v); }},
      {"alpha",
       [](auto& c, auto& k, auto& v) {
         c.alpha = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"L",
       [](auto& c, auto& k, auto& v) {
         c.L = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"M",
       [](auto& c, auto& k, auto& v) {
         c.M = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"f_bar",
       [](auto& c, auto& k, auto& v) {
         c.f_bar = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"delta", [](auto& c, auto& k, auto& v) { c.tolerances.delta = parse_double(k, v); }},
      {"xi", [](auto& c, auto& k, auto& v) { c.tolerances.xi = parse_double(k, v); }},
      {"eta", [](auto& c, auto& k, auto& v) { c.tolerances.eta = static_cast<int>(parse_int(k, v)); }},
      {"max_iter",
       [](auto& c, auto& k, auto& v) {
         c.max_iter = parse_auto<std::int64_t>(v, [&] { return parse_int(k, v); });
       }},
      {"step_policy",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "short") c.tolerances.step_policy = StepPolicy::ShortStep;
         else if (v == "long") c.tolerances.step_policy = StepPolicy::LongStep;
         else throw ConfigError(k, "expected short or long");
       }},
      {"sign_policy",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "rademacher") c.tolerances.sign_policy = SignPolicy::Rademacher;
         else if (v == "descent") c.tolerances.sign_policy = SignPolicy::DescentAligned;
         else throw ConfigError(k, "expected rademacher or descent");
       }},
      {"preset",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "none") c.preset = Preset::None;
         else if (v == "sqrt") c.preset = Preset::Sqrt;
         else if (v == "cube_two_thirds") c.preset = Preset::CubeTwoThirds;
         else if (v == "strict_saddle") c.preset = Preset::StrictSaddle;
         else throw ConfigError(k, "expected none, sqrt, cube_two_thirds or strict_saddle");
       }},
      {"preset.eps",
       [](auto& c, auto& k, auto& v) {
         c.preset_eps = parse_auto<double>(v, [&] { return parse_double(k, v); });
       }},
      {"oracle",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "exact") c.oracle = OracleKind::Exact;
         else if (v == "adversarial") c.oracle = OracleKind::Adversarial;
         else if (v == "subsampled") c.oracle = OracleKind::Subsampled;
         else throw ConfigError(k, "expected exact, adversarial or subsampled");
       }},
      {"noise.grad_fraction",
       [](auto& c, auto& k, auto& v) { c.noise.grad_fraction = parse_double(k, v); }},
      {"noise.hess_fraction",
       [](auto& c, auto& k, auto& v) { c.noise.hess_fraction = parse_double(k, v); }},
      {"noise.direction",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "orthogonal") c.noise.direction_mode = oracles::DirectionMode::OrthogonalToGradient;
         else if (v == "random") c.noise.direction_mode = oracles::DirectionMode::RandomUnit;
         else throw ConfigError(k, "expected orthogonal or random");
       }},
      {"noise.stress", [](auto& c, auto& k, auto& v) { c.noise.stress = parse_bool(k, v); }},
      {"subsample.mode",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "oracle_informed") c.sampling = oracles::SamplingMode::OracleInformed;
         else if (v == "practical") c.sampling = oracles::SamplingMode::Practical;
         else throw ConfigError(k, "expected oracle_informed or practical");
       }},
      {"seeds", [](auto& c, auto& k, auto& v) { c.seeds = parse_int(k, v); }},
      {"base_seed", [](auto& c, auto& k, auto& v) { c.base_seed = parse_uint(k, v); }},
      {"workers", [](auto& c, auto& k, auto& v) { c.workers = static_cast<int>(parse_int(k, v)); }},
      {"out", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.out = v; }},
      {"traces", [](auto& c, auto& k, auto& v) { c.write_traces = parse_bool(k, v); }},
      {"sweep.eps",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.sweep_eps.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) c.sweep_eps.push_back(parse_double(k, trim(item)));
       }},
  };
  return table;
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::None: return "none";
    case Preset::Sqrt: return "sqrt";
    case Preset::CubeTwoThirds: return "cube_two_thirds";
    case Preset::StrictSaddle: return "strict_saddle";
  }
  return "?";
}

std::string_view start_name(StartMode m) {
  switch (m) {
    case StartMode::Constant: return "constant";
    case StartMode::Uniform: return "uniform";
    case StartMode::Gaussian: return "gaussian";
  }
  return "?";
}

double mf_gamma(const MatrixFactorizationParams& p) { return p.gamma.value_or(4.0 * p.sigma1); }

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Quartic: return "quartic";
    case ProblemKind::MatrixFactorization: return "matrix_factorization";
    case ProblemKind::FiniteSum: return "finite_sum";
  }
  return "?";
}

std::string_view to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::Exact: return "exact";
    case OracleKind::Adversarial: return "adversarial";
    case OracleKind::Subsampled: return "subsampled";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (seeds < 1) throw ConfigError("seeds", "must be >= 1");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (!(quartic.b > 0.0)) throw ConfigError("quartic.b", "must be positive");
  if (quartic.radius && *quartic.radius < 2.0 * std::sqrt(quartic.b)) {
    throw ConfigError("quartic.radius", "must be >= 2 sqrt(quartic.b)");
  }
  if (mf.rank >= mf.dim) throw ConfigError("mf.rank", "must be < mf.dim");
  if (!(mf.sigma_r > 0.0)) throw ConfigError("mf.sigma_r", "must be positive");
  if (mf.sigma1 < mf.sigma_r) throw ConfigError("mf.sigma1", "must be >= mf.sigma_r");
  if (!(mf_gamma(mf) > mf.sigma1)) throw ConfigError("mf.gamma", "must exceed mf.sigma1");
  if (fs.lambda < 0.0) throw ConfigError("fs.lambda", "must be >= 0");
  if (x0.scale < 0.0) throw ConfigError("x0.scale", "must be >= 0");
  if (preset == Preset::Sqrt || preset == Preset::CubeTwoThirds) {
    if (!preset_eps && sweep_eps.empty()) throw ConfigError("preset.eps", "required by this preset");
    if (preset_eps && !(*preset_eps > 0.0)) throw ConfigError("preset.eps", "must be positive");
  }
  if (preset == Preset::StrictSaddle && problem != ProblemKind::MatrixFactorization) {
    throw ConfigError("preset", "strict_saddle needs problem = matrix_factorization");
  }
  if (oracle == OracleKind::Subsampled && problem != ProblemKind::FiniteSum) {
    throw ConfigError("oracle", "subsampled needs problem = finite_sum");
  }
  noise.validate();
  if (max_iter && *max_iter < 1) throw ConfigError("max_iter", "must be >= 1");
  for (double e : sweep_eps) {
    if (!(e > 0.0)) throw ConfigError("sweep.eps", "entries must be positive");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    it->second(config, key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string default_config_text() {
  return R"(# problem: quartic | matrix_factorization | finite_sum
problem = quartic
quartic.dim = 10
quartic.b = 1
quartic.radius = auto        # 2 sqrt(b)
mf.dim = 6
mf.rank = 2
mf.sigma1 = 2
mf.sigma_r = 1
mf.gamma = auto              # 4 sigma1
mf.data_seed = 7
fs.samples = 500
fs.dim = 10
fs.lambda = 1
fs.data_seed = 11
# start: constant | uniform | gaussian (value + per-coordinate noise of size scale)
x0.mode = constant
x0.value = 0
x0.scale = 0
eps_g = 0.1
eps_H = 0.1
alpha = auto                 # eps_H
L = auto                     # from the problem
M = auto
f_bar = auto
delta = 0.1
xi = 0.01
eta = 2
max_iter = auto              # 10 x high-probability iteration bound
step_policy = short          # short | long
sign_policy = rademacher     # rademacher | descent
preset = none                # none | sqrt | cube_two_thirds | strict_saddle
preset.eps = auto
oracle = exact               # exact | adversarial | subsampled
noise.grad_fraction = 1
noise.hess_fraction = 1
noise.direction = orthogonal # orthogonal | random
noise.stress = false
subsample.mode = oracle_informed  # oracle_informed | practical
seeds = 1
base_seed = 0
workers = 1
out = out
traces = true
sweep.eps =                  # comma-separated list for the sweep command
)";
}

std::map<std::string, std::string> config_echo(const ExperimentConfig& c) {
  std::map<std::string, std::string> e;
  e["problem"] = std::string(to_string(c.problem));
  switch (c.problem) {
    case ProblemKind::Quartic:
      e["quartic.dim"] = std::to_string(c.quartic.dim);
      e["quartic.b"] = fmt(c.quartic.b);
      e["quartic.radius"] = fmt_opt(c.quartic.radius);
      break;
    case ProblemKind::MatrixFactorization:
      e["mf.dim"] = std::to_string(c.mf.dim);
      e["mf.rank"] = std::to_string(c.mf.rank);
      e["mf.sigma1"] = fmt(c.mf.sigma1);
      e["mf.sigma_r"] = fmt(c.mf.sigma_r);
      e["mf.gamma"] = fmt(mf_gamma(c.mf));
      e["mf.data_seed"] = std::to_string(c.mf.data_seed);
      break;
    case ProblemKind::FiniteSum:
      e["fs.samples"] = std::to_string(c.fs.samples);
      e["fs.dim"] = std::to_string(c.fs.dim);
      e["fs.lambda"] = fmt(c.fs.lambda);
      e["fs.data_seed"] = std::to_string(c.fs.data_seed);
      break;
  }
  e["x0.mode"] = std::string(start_name(c.x0.mode));
  e["x0.value"] = fmt(c.x0.value);
  e["x0.scale"] = fmt(c.x0.scale);
  e["preset"] = std::string(preset_name(c.preset));
  e["preset.eps"] = fmt_opt(c.preset_eps);
  e["oracle"] = std::string(to_string(c.oracle));
  if (c.oracle == OracleKind::Adversarial) {
    e["noise.grad_fraction"] = fmt(c.noise.grad_fraction);
    e["noise.hess_fraction"] = fmt(c.noise.hess_fraction);
    e["noise.direction"] = c.noise.direction_mode == oracles::DirectionMode::RandomUnit
                               ? "random"
                               : "orthogonal";
    e["noise.stress"] = c.noise.stress ? "true" : "false";
  }
  if (c.oracle == OracleKind::Subsampled) {
    e["subsample.mode"] =
        c.sampling == oracles::SamplingMode::Practical ? "practical" : "oracle_informed";
  }
  e["seeds"] = std::to_string(c.seeds);
  e["base_seed"] = std::to_string(c.base_seed);
  return e;
}

std::shared_ptr<const problems::Problem> build_problem(const ExperimentConfig& c) {
  switch (c.problem) {
    case ProblemKind::Quartic:
      return problems::quartic_double_well(c.quartic.dim, {c.quartic.b},
                                           c.quartic.radius.value_or(2.0 * std::sqrt(c.quartic.b)));
    case ProblemKind::MatrixFactorization: {
      Rng data(c.mf.data_seed, 0);
      return std::make_shared<const problems::MatrixFactorization>(problems::make_mf_spec(
          c.mf.dim, c.mf.rank, c.mf.sigma1, c.mf.sigma_r, mf_gamma(c.mf), data));
    }
    case ProblemKind::FiniteSum:
      return problems::finite_sum_regression(c.fs.samples, c.fs.dim, c.fs.lambda,
                                             Rng(c.fs.data_seed, 0));
  }
  throw ContractError("unknown problem kind");
}

ToleranceConfig resolve_tolerances(const ExperimentConfig& c, const problems::Problem& problem) {
  ToleranceConfig t = c.tolerances;
  const problems::ProblemConstants& k = problem.constants();
  t.L = c.L.value_or(k.L);
  t.M = c.M.value_or(k.M);
  t.f_bar = c.f_bar.value_or(k.f_bar);

  switch (c.preset) {
    case Preset::None:
      break;
    case Preset::Sqrt:
    case Preset::CubeTwoThirds: {
      if (!c.preset_eps) throw ConfigError("preset.eps", "required by this preset");
      const auto regime =
          c.preset == Preset::Sqrt ? theory::Coupling::Sqrt : theory::Coupling::CubeTwoThirds;
      const theory::Tolerances tol = theory::coupling_preset(regime, *c.preset_eps, t.L, t.M);
      t.eps_g = tol.eps_g;
      t.eps_H = tol.eps_H;
      break;
    }
    case Preset::StrictSaddle: {
      const theory::Tolerances tol = theory::strict_saddle_targets(c.mf.sigma_r);
      t.eps_g = tol.eps_g;
      t.eps_H = tol.eps_H;
      break;
    }
  }
  t.alpha = c.alpha.value_or(t.eps_H);
  if (c.max_iter) t.max_iter = *c.max_iter;
  t.validate();
  return t;
}

std::unique_ptr<oracles::OracleBundle> build_bundle(const ExperimentConfig& c,
                                                    std::shared_ptr<const problems::Problem> problem,
                                                    const ToleranceConfig& tol) {
  switch (c.oracle) {
    case OracleKind::Exact:
      return oracles::exact_bundle(std::move(problem));
    case OracleKind::Adversarial:
      return std::make_unique<oracles::AdversarialOracles>(std::move(problem), tol.eps_g, tol.eps_H,
                                                           c.noise);
    case OracleKind::Subsampled: {
      auto fs = std::dynamic_pointer_cast<const problems::FiniteSumProblem>(problem);
      if (!fs) throw ConfigError("oracle", "subsampled needs a finite-sum problem");
      return std::make_unique<oracles::SubsampledOracles>(std::move(fs), tol.eps_g, tol.eps_H,
                                                          tol.xi, c.sampling);
    }
  }
  throw ContractError("unknown oracle kind");
}

}  // namespace sosp::harness
