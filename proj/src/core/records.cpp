#include "sosp/core/records.hpp"

#include <string>

#include "sosp/core/error.hpp"

namespace sosp {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::GradientStep: return "GradientStep";
    case StepKind::NegativeCurvatureStep: return "NegativeCurvatureStep";
    case StepKind::Terminated: return "Terminated";
  }
  return "Terminated";
}

StepKind step_kind_from_string(std::string_view name) {
  if (name == "GradientStep") return StepKind::GradientStep;
  if (name == "NegativeCurvatureStep") return StepKind::NegativeCurvatureStep;
  if (name == "Terminated") return StepKind::Terminated;
  throw ContractError("unknown step kind '" + std::string(name) + "'");
}

}  // namespace sosp
