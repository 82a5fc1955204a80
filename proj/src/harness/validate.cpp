#include "sosp/harness/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sosp::harness {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

bool ValidationReport::passed() const {
  for (const Check& c : checks) {
    if (!c.skipped && !c.passed) return false;
  }
  return true;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const Check& c : checks) {
    out << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  return out.str();
}

PooledNc pool_nc_deltas(const std::vector<SeedRow>& rows) {
  PooledNc p;
  double sum = 0.0;
  double sumsq = 0.0;
  for (const SeedRow& r : rows) {
    if (r.failed) continue;
    p.count += r.nc_delta_count;
    sum += r.nc_delta_sum;
    sumsq += r.nc_delta_sumsq;
  }
  if (p.count == 0) return p;
  const double n = static_cast<double>(p.count);
  p.mean = sum / n;
  if (p.count > 1) {
    const double var = std::max(0.0, (sumsq - n * p.mean * p.mean) / (n - 1.0));
    p.standard_error = std::sqrt(var / n);
  }
  return p;
}

ValidationReport validate(const EnsembleSummary& s) {
  ValidationReport report;
  const ToleranceConfig& t = s.tolerances;
  const bool rademacher = t.sign_policy == SignPolicy::Rademacher;
  const char* const sign_note = "guarantee covers the rademacher sign policy only";

  std::int64_t ok_runs = 0;
  double sum_T = 0.0;
  double sum_bound = 0.0;
  std::int64_t over_n = 0;
  for (const SeedRow& r : s.rows) {
    if (r.failed) continue;
    ++ok_runs;
    sum_T += static_cast<double>(r.T);
    sum_bound += r.expected_bound;
    if (!r.terminated || static_cast<double>(r.T) > r.n_high_prob) ++over_n;
  }

  {
    Check c;
    c.name = "expected_T";
    if (ok_runs == 0) {
      c.skipped = true;
      c.detail = "no completed runs";
    } else {
      const double mean_T = sum_T / static_cast<double>(ok_runs);
      const double bound = sum_bound / static_cast<double>(ok_runs);
      c.passed = mean_T <= bound;
      c.detail = "mean T = " + num(mean_T) + ", bound = " + num(bound);
      if (!rademacher) {
        c.skipped = true;
        c.detail += "; " + std::string(sign_note);
      }
    }
    report.checks.push_back(c);
  }
  {
    Check c;
    c.name = "high_prob_T";
    if (ok_runs == 0) {
      c.skipped = true;
      c.detail = "no completed runs";
    } else {
      const double frac = static_cast<double>(over_n) / static_cast<double>(ok_runs);
      c.passed = frac <= t.delta;
      c.detail = "fraction T > n = " + num(frac) + ", delta = " + num(t.delta);
      if (!rademacher) {
        c.skipped = true;
        c.detail += "; " + std::string(sign_note);
      }
    }
    report.checks.push_back(c);
  }
  {
    Check c;
    c.name = "certificate";
    std::int64_t bad = 0;
    for (const SeedRow& r : s.rows) {
      if (r.failed || !r.terminated || r.certificate_ok) continue;
      if (bad++ == 0) {
        c.detail = "seed " + std::to_string(r.seed) + " at iteration " + std::to_string(r.T) +
                   ": ||grad f|| = " + num(r.grad_norm_final) +
                   ", lambda_min = " + num(r.lambda_min_final);
      }
    }
    c.passed = bad == 0;
    if (bad > 1) c.detail += " (" + std::to_string(bad) + " runs in total)";
    report.checks.push_back(c);
  }
  {
    Check c;
    c.name = "gd_descent";
    std::int64_t bad = 0;
    for (const SeedRow& r : s.rows) {
      if (r.failed) continue;
      for (std::int64_t k : r.descent_violations) {
        if (bad++ == 0) {
          c.detail = "seed " + std::to_string(r.seed) + " at iteration " + std::to_string(k);
        }
      }
    }
    c.passed = bad == 0;
    if (bad > 1) c.detail += " (" + std::to_string(bad) + " steps in total)";
    report.checks.push_back(c);
  }
  {
    Check c;
    c.name = "nc_descent";
    const PooledNc p = pool_nc_deltas(s.rows);
    if (p.count < 2) {
      c.skipped = true;
      c.detail = std::to_string(p.count) + " negative curvature steps; a standard error needs 2";
    } else {
      const double target = -2.0 * t.eps_H * t.eps_H * t.eps_H / (9.0 * t.M * t.M);
      c.passed = p.mean <= target + 3.0 * p.standard_error;
      c.detail = "pooled mean = " + num(p.mean) + " over " + std::to_string(p.count) +
                 " steps, threshold = " + num(target) + " + 3 x " + num(p.standard_error);
      if (!rademacher) {
        c.skipped = true;
        c.detail += "; " + std::string(sign_note);
      }
    }
    report.checks.push_back(c);
  }
  {
    Check c;
    c.name = "failed_runs";
    std::int64_t failed = 0;
    for (const SeedRow& r : s.rows) {
      if (!r.failed) continue;
      if (failed++ == 0) c.detail = "seed " + std::to_string(r.seed) + ": " + r.error;
    }
    c.passed = failed == 0;
    if (failed > 1) c.detail += " (" + std::to_string(failed) + " runs in total)";
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace sosp::harness
