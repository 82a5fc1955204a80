#include "sosp/harness/trace_io.hpp"

#include <fstream>

#include <json.hpp>

#include "sosp/core/error.hpp"

namespace sosp::harness {

using json = nlohmann::ordered_json;

std::string record_to_json_line(const IterationRecord& r) {
  json j;
  j["k"] = r.k;
  j["kind"] = std::string(to_string(r.kind));
  j["grad_norm_est"] = r.grad_norm_est;
  if (r.lambda_hat) j["lambda_hat"] = *r.lambda_hat;
  if (r.sigma) j["sigma"] = *r.sigma;
  if (r.alpha_k) j["alpha_k"] = *r.alpha_k;
  j["hvp_count"] = r.hvp_count;
  if (r.grad_samples) j["grad_samples"] = *r.grad_samples;
  if (r.hess_samples) j["hess_samples"] = *r.hess_samples;
  if (r.f_exact) j["f_exact"] = *r.f_exact;
  return j.dump();
}

IterationRecord record_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed trace line: ") + e.what());
  }
  try {
    IterationRecord r;
    r.k = j.at("k").get<std::int64_t>();
    r.kind = step_kind_from_string(j.at("kind").get<std::string>());
    r.grad_norm_est = j.at("grad_norm_est").get<double>();
    if (j.contains("lambda_hat")) r.lambda_hat = j["lambda_hat"].get<double>();
    if (j.contains("sigma")) r.sigma = j["sigma"].get<int>();
    if (j.contains("alpha_k")) r.alpha_k = j["alpha_k"].get<double>();
    r.hvp_count = j.at("hvp_count").get<std::int64_t>();
    if (j.contains("grad_samples")) r.grad_samples = j["grad_samples"].get<std::int64_t>();
    if (j.contains("hess_samples")) r.hess_samples = j["hess_samples"].get<std::int64_t>();
    if (j.contains("f_exact")) r.f_exact = j["f_exact"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("trace record missing or mistyped field: ") + e.what());
  } catch (const ContractError& e) {
    throw IoError(std::string("trace record: ") + e.what());
  }
}

void write_trace(const std::filesystem::path& path, const std::vector<IterationRecord>& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const IterationRecord& r : trace) out << record_to_json_line(r) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<IterationRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<IterationRecord> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) trace.push_back(record_from_json_line(line));
  }
  return trace;
}

}  // namespace sosp::harness
