#pragma once

#include <filesystem>
#include <string>

#include "sosp/harness/ensemble.hpp"

namespace sosp::harness {

std::string summary_to_json(const EnsembleSummary& summary);
EnsembleSummary summary_from_json(const std::string& text);

/// One header line and one row per seed; numbers printed with %.17g.
std::string summary_to_csv(const EnsembleSummary& summary);

/// Writes summary.json and summary.csv into `dir`, creating it if needed.
void write_summary(const std::filesystem::path& dir, const EnsembleSummary& summary);
EnsembleSummary read_summary(const std::filesystem::path& summary_json);

}  // namespace sosp::harness
