#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sosp {

/// A finite point or direction in R^d, d >= 1.
///
/// Every constructor and arithmetic helper checks finiteness and throws
/// NumericError otherwise, so a DenseVector in hand never holds NaN/Inf.
/// The length is fixed at construction; there is no resize.
class DenseVector {
 public:
  explicit DenseVector(std::vector<double> entries);
  DenseVector(std::initializer_list<double> entries);

  static DenseVector zeros(std::size_t dim);
  static DenseVector constant(std::size_t dim, double value);
  static DenseVector unit(std::size_t dim, std::size_t index);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  const std::vector<double>& to_vector() const noexcept { return entries_; }

  bool operator==(const DenseVector&) const = default;

 private:
  std::vector<double> entries_;
};

double dot(const DenseVector& a, const DenseVector& b);
double norm(const DenseVector& a);
double max_abs(const DenseVector& a);

// s * a + b
DenseVector axpy(double s, const DenseVector& a, const DenseVector& b);
DenseVector scale(double s, const DenseVector& a);

DenseVector operator+(const DenseVector& a, const DenseVector& b);
DenseVector operator-(const DenseVector& a, const DenseVector& b);
DenseVector operator*(double s, const DenseVector& a);

}  // namespace sosp
