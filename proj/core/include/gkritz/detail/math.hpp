#pragma once

#include <cmath>

namespace gkritz::detail {

// lgamma writes the global signgam on glibc; use the reentrant form there.
inline double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

inline double parity_sign(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace gkritz::detail
