#include "sosp/core/tolerance_config.hpp"

#include <cmath>

#include "sosp/core/error.hpp"

namespace sosp {
namespace {

void require_positive(const char* field, double value) {
  if (!(std::isfinite(value) && value > 0.0)) throw ConfigError(field, "must be positive and finite");
}

void require_probability(const char* field, double value) {
  if (!(value > 0.0 && value < 1.0)) throw ConfigError(field, "must lie in (0, 1)");
}

}  // namespace

void ToleranceConfig::validate() const {
  require_positive("eps_g", eps_g);
  require_positive("eps_H", eps_H);
  require_positive("alpha", alpha);
  require_positive("L", L);
  require_positive("M", M);
  if (!std::isfinite(f_bar)) throw ConfigError("f_bar", "must be finite");
  if (alpha < eps_H) throw ConfigError("alpha", "must satisfy eps_H <= alpha");
  if (alpha > L) throw ConfigError("alpha", "must satisfy alpha <= L");
  require_probability("delta", delta);
  require_probability("xi", xi);
  if (eta < 2) throw ConfigError("eta", "must be an integer >= 2");
  if (max_iter < 1) throw ConfigError("max_iter", "must be a positive integer");
}

std::string_view to_string(StepPolicy policy) {
  return policy == StepPolicy::ShortStep ? "short" : "long";
}

std::string_view to_string(SignPolicy policy) {
  return policy == SignPolicy::Rademacher ? "rademacher" : "descent";
}

}  // namespace sosp
