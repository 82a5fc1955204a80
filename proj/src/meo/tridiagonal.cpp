#include "sosp/meo/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sosp/core/error.hpp"

namespace sosp::meo {

TridiagonalEigen tridiagonal_eigen(const std::vector<double>& diagonal,
                                   const std::vector<double>& off_diagonal) {
  const int n = static_cast<int>(diagonal.size());
  if (n == 0) throw ContractError("tridiagonal_eigen needs a non-empty diagonal");
  if (off_diagonal.size() + 1 != diagonal.size()) {
    throw ContractError("off-diagonal must be one shorter than the diagonal");
  }

  std::vector<double> d = diagonal;
  // e[i] couples rows i and i+1; e[n-1] is scratch.
  std::vector<double> e(off_diagonal);
  e.push_back(0.0);
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 60;

  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) throw NumericError("tridiagonal QL failed to converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          const double zk = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * zk;
          z(k, i) = c * z(k, i) - s * zk;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = d[order[j]];
    out.vectors.col(j) = z.col(order[j]);
  }
  return out;
}

}  // namespace sosp::meo
