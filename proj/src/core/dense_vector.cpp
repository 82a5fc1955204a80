#include "sosp/core/dense_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sosp/core/error.hpp"

namespace sosp {
namespace {

void check_finite(const std::vector<double>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) {
      throw NumericError("non-finite entry at index " + std::to_string(i));
    }
  }
}

void check_same_size(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) {
    throw ContractError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  }
}

}  // namespace

DenseVector::DenseVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ContractError("DenseVector needs at least one entry");
  check_finite(entries_);
}

DenseVector::DenseVector(std::initializer_list<double> entries)
    : DenseVector(std::vector<double>(entries)) {}

DenseVector DenseVector::zeros(std::size_t dim) { return constant(dim, 0.0); }

DenseVector DenseVector::constant(std::size_t dim, double value) {
  return DenseVector(std::vector<double>(dim, value));
}

DenseVector DenseVector::unit(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ContractError("unit vector index out of range");
  std::vector<double> e(dim, 0.0);
  e[index] = 1.0;
  return DenseVector(std::move(e));
}

double dot(const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  if (!std::isfinite(s)) throw NumericError("dot product overflowed");
  return s;
}

double norm(const DenseVector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const DenseVector& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

DenseVector axpy(double s, const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i] + b[i];
  return DenseVector(std::move(out));
}

DenseVector scale(double s, const DenseVector& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return DenseVector(std::move(out));
}

DenseVector operator+(const DenseVector& a, const DenseVector& b) { return axpy(1.0, a, b); }

DenseVector operator-(const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return DenseVector(std::move(out));
}

DenseVector operator*(double s, const DenseVector& a) { return scale(s, a); }

}  // namespace sosp
