#include "sturm.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace gkritz::testing {

using Big = boost::multiprecision::cpp_bin_float_50;

int count_below(const SymMatrix& H, double x) {
  const std::size_t n = H.dim();
  std::vector<Big> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = Big(H(i, j)) - (i == j ? Big(x) : Big(0));
  }
  int negatives = 0;
  const Big tiny("1e-40");
  for (std::size_t k = 0; k < n; ++k) {
    Big pivot = a[k * n + k];
    if (pivot == 0) pivot = tiny;  // x sits on an eigenvalue of a leading minor
    if (pivot < 0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Big f = a[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return negatives;
}

std::vector<double> sturm_eigenvalues(const SymMatrix& H, double tol) {
  const std::size_t n = H.dim();
  // Gershgorin interval
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) radius += std::abs(H(i, j));
    }
    lo = std::min(lo, H(i, i) - radius);
    hi = std::max(hi, H(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo;
    double b = hi;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (count_below(H, mid) > static_cast<int>(k)) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace gkritz::testing
