#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sosp/core/records.hpp"

namespace sosp::harness {

/// One JSON object with keys k, kind, grad_norm_est, hvp_count and, when
/// present, lambda_hat, sigma, alpha_k, grad_samples, hess_samples, f_exact.
std::string record_to_json_line(const IterationRecord& record);
IterationRecord record_from_json_line(const std::string& line);

void write_trace(const std::filesystem::path& path, const std::vector<IterationRecord>& trace);
std::vector<IterationRecord> read_trace(const std::filesystem::path& path);

}  // namespace sosp::harness
