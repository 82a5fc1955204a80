#include "sosp/harness/summary_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sosp/core/error.hpp"

namespace sosp::harness {
namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

json tolerances_json(const ToleranceConfig& t) {
  json j;
  j["eps_g"] = t.eps_g;
  j["eps_H"] = t.eps_H;
  j["alpha"] = t.alpha;
  j["L"] = t.L;
  j["M"] = t.M;
  j["f_bar"] = t.f_bar;
  j["delta"] = t.delta;
  j["xi"] = t.xi;
  j["eta"] = t.eta;
  j["max_iter"] = t.max_iter;
  j["step_policy"] = std::string(to_string(t.step_policy));
  j["sign_policy"] = std::string(to_string(t.sign_policy));
  return j;
}

ToleranceConfig tolerances_from(const json& j) {
  ToleranceConfig t;
  t.eps_g = j.at("eps_g").get<double>();
  t.eps_H = j.at("eps_H").get<double>();
  t.alpha = j.at("alpha").get<double>();
  t.L = j.at("L").get<double>();
  t.M = j.at("M").get<double>();
  t.f_bar = j.at("f_bar").get<double>();
  t.delta = j.at("delta").get<double>();
  t.xi = j.at("xi").get<double>();
  t.eta = j.at("eta").get<int>();
  t.max_iter = j.at("max_iter").get<std::int64_t>();
  t.step_policy = j.at("step_policy").get<std::string>() == "long" ? StepPolicy::LongStep
                                                                   : StepPolicy::ShortStep;
  t.sign_policy = j.at("sign_policy").get<std::string>() == "descent" ? SignPolicy::DescentAligned
                                                                      : SignPolicy::Rademacher;
  return t;
}

json bounds_json(const theory::BoundReport& b) {
  json j;
  j["f0"] = b.f0;
  j["c_eps"] = b.c_eps;
  j["expected_T_bound"] = b.expected_T_bound;
  j["B"] = b.B;
  j["C"] = b.C;
  j["K"] = b.K;
  j["n_high_prob"] = b.n_high_prob;
  j["operation_complexity"] = b.operation_complexity;
  j["lanczos_cap"] = b.lanczos_cap;
  j["union_bound_xi"] = b.union_bound_xi;
  if (b.grad_sample_size) j["grad_sample_size"] = *b.grad_sample_size;
  if (b.hess_sample_size) j["hess_sample_size"] = *b.hess_sample_size;
  return j;
}

theory::BoundReport bounds_from(const json& j) {
  theory::BoundReport b;
  b.f0 = j.at("f0").get<double>();
  b.c_eps = j.at("c_eps").get<double>();
  b.expected_T_bound = j.at("expected_T_bound").get<double>();
  b.B = j.at("B").get<double>();
  b.C = j.at("C").get<double>();
  b.K = j.at("K").get<double>();
  b.n_high_prob = j.at("n_high_prob").get<double>();
  b.operation_complexity = j.at("operation_complexity").get<double>();
  b.lanczos_cap = j.at("lanczos_cap").get<double>();
  b.union_bound_xi = j.at("union_bound_xi").get<double>();
  if (j.contains("grad_sample_size")) b.grad_sample_size = j["grad_sample_size"].get<std::int64_t>();
  if (j.contains("hess_sample_size")) b.hess_sample_size = j["hess_sample_size"].get<std::int64_t>();
  return b;
}

json row_json(const SeedRow& r) {
  json j;
  j["seed"] = r.seed;
  j["failed"] = r.failed;
  j["error"] = r.error;
  j["terminated"] = r.terminated;
  j["T"] = r.T;
  j["gd_count"] = r.gd_count;
  j["nc_count"] = r.nc_count;
  j["grad_evals"] = r.grad_evals;
  j["hvps"] = r.hvps;
  j["grad_samples"] = r.grad_samples;
  j["hess_samples"] = r.hess_samples;
  j["f0"] = r.f0;
  j["f_final"] = r.f_final;
  j["grad_norm_final"] = r.grad_norm_final;
  j["lambda_min_final"] = r.lambda_min_final;
  j["certificate_ok"] = r.certificate_ok;
  j["expected_bound"] = r.expected_bound;
  j["n_high_prob"] = r.n_high_prob;
  j["descent_violations"] = r.descent_violations;
  j["nc_delta_sum"] = r.nc_delta_sum;
  j["nc_delta_sumsq"] = r.nc_delta_sumsq;
  j["nc_delta_count"] = r.nc_delta_count;
  j["region_violations"] = r.region_violations;
  return j;
}

SeedRow row_from(const json& j) {
  SeedRow r;
  r.seed = j.at("seed").get<std::int64_t>();
  r.failed = j.at("failed").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.terminated = j.at("terminated").get<bool>();
  r.T = j.at("T").get<std::int64_t>();
  r.gd_count = j.at("gd_count").get<std::int64_t>();
  r.nc_count = j.at("nc_count").get<std::int64_t>();
  r.grad_evals = j.at("grad_evals").get<std::int64_t>();
  r.hvps = j.at("hvps").get<std::int64_t>();
  r.grad_samples = j.at("grad_samples").get<std::int64_t>();
  r.hess_samples = j.at("hess_samples").get<std::int64_t>();
  r.f0 = j.at("f0").get<double>();
  r.f_final = j.at("f_final").get<double>();
  r.grad_norm_final = j.at("grad_norm_final").get<double>();
  r.lambda_min_final = j.at("lambda_min_final").get<double>();
  r.certificate_ok = j.at("certificate_ok").get<bool>();
  r.expected_bound = j.at("expected_bound").get<double>();
  r.n_high_prob = j.at("n_high_prob").get<double>();
  r.descent_violations = j.at("descent_violations").get<std::vector<std::int64_t>>();
  r.nc_delta_sum = j.at("nc_delta_sum").get<double>();
  r.nc_delta_sumsq = j.at("nc_delta_sumsq").get<double>();
  r.nc_delta_count = j.at("nc_delta_count").get<std::int64_t>();
  r.region_violations = j.at("region_violations").get<std::int64_t>();
  return r;
}

}  // namespace

std::string summary_to_json(const EnsembleSummary& s) {
  json j;
  json cfg = json::object();
  for (const auto& [k, v] : s.config) cfg[k] = v;
  j["config"] = cfg;
  j["tolerances"] = tolerances_json(s.tolerances);
  j["bounds"] = bounds_json(s.bounds);
  json agg;
  agg["mean_T"] = s.aggregates.mean_T;
  agg["median_T"] = s.aggregates.median_T;
  agg["max_T"] = s.aggregates.max_T;
  agg["terminated"] = s.aggregates.terminated;
  agg["failed"] = s.aggregates.failed;
  j["aggregates"] = agg;
  json rows = json::array();
  for (const SeedRow& r : s.rows) rows.push_back(row_json(r));
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

EnsembleSummary summary_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EnsembleSummary s;
    for (const auto& [k, v] : j.at("config").items()) s.config[k] = v.get<std::string>();
    s.tolerances = tolerances_from(j.at("tolerances"));
    s.bounds = bounds_from(j.at("bounds"));
    const json& agg = j.at("aggregates");
    s.aggregates.mean_T = agg.at("mean_T").get<double>();
    s.aggregates.median_T = agg.at("median_T").get<double>();
    s.aggregates.max_T = agg.at("max_T").get<std::int64_t>();
    s.aggregates.terminated = agg.at("terminated").get<std::int64_t>();
    s.aggregates.failed = agg.at("failed").get<std::int64_t>();
    for (const json& r : j.at("rows")) s.rows.push_back(row_from(r));
    return s;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed summary: ") + e.what());
  }
}

std::string summary_to_csv(const EnsembleSummary& s) {
  std::ostringstream out;
  out << "seed,failed,terminated,T,gd_count,nc_count,grad_evals,hvps,grad_samples,hess_samples,"
         "f0,f_final,grad_norm_final,lambda_min_final,certificate_ok,expected_bound,n_high_prob,"
         "descent_violations,nc_delta_sum,nc_delta_sumsq,nc_delta_count,region_violations,error\n";
  for (const SeedRow& r : s.rows) {
    out << r.seed << ',' << int(r.failed) << ',' << int(r.terminated) << ',' << r.T << ','
        << r.gd_count << ',' << r.nc_count << ',' << r.grad_evals << ',' << r.hvps << ','
        << r.grad_samples << ',' << r.hess_samples << ',' << num(r.f0) << ',' << num(r.f_final)
        << ',' << num(r.grad_norm_final) << ',' << num(r.lambda_min_final) << ','
        << int(r.certificate_ok) << ',' << num(r.expected_bound) << ',' << num(r.n_high_prob)
        << ',' << r.descent_violations.size() << ',' << num(r.nc_delta_sum) << ','
        << num(r.nc_delta_sumsq) << ',' << r.nc_delta_count << ',' << r.region_violations << ','
        << csv_field(r.error) << '\n';
  }
  return out.str();
}

void write_summary(const std::filesystem::path& dir, const EnsembleSummary& summary) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + p.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + p.string());
  };
  write(dir / "summary.json", summary_to_json(summary));
  write(dir / "summary.csv", summary_to_csv(summary));
}

EnsembleSummary read_summary(const std::filesystem::path& summary_json) {
  std::ifstream in(summary_json, std::ios::binary);
  if (!in) throw IoError("cannot open " + summary_json.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return summary_from_json(ss.str());
}

}  // namespace sosp::harness
