#include "gkritz/specfun.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "gkritz/detail/math.hpp"

namespace gkritz {

SignedLogValue SignedLogValue::from(double x) {
  if (x == 0.0) return zero();
  return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

SignedLogValue& SignedLogValue::operator/=(const SignedLogValue& rhs) {
  if (rhs.sign == 0) throw std::domain_error("SignedLogValue: division by zero");
  sign *= rhs.sign;
  log_magnitude -= rhs.log_magnitude;
  return *this;
}

SignedLogValue SignedLogValue::sqrt() const {
  if (sign < 0) throw std::domain_error("SignedLogValue: square root of a negative value");
  return {0.5 * log_magnitude, sign};
}

double pochhammer(double a, unsigned n) {
  if (n == 0) return 1.0;
  if (a <= 0.0 && a == std::floor(a)) {
    const double m = -a;
    if (static_cast<double>(n) > m) return 0.0;
  }
  double p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= a + k;
  return p;
}

SignedLogValue ln_pochhammer(double a, unsigned n) {
  if (!(a > 0.0)) {
    throw std::domain_error("ln_pochhammer: requires a > 0, got " + std::to_string(a));
  }
  // Multiply in chunks and only take a log when the running product nears
  // the edge of the double range; keeps the error near n ulps.
  constexpr double kHigh = 1e280;
  constexpr double kLow = 1e-280;
  NeumaierSum logs;
  double chunk = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    const double f = a + k;
    if (f > 1e20 || f < 1e-20) {
      logs += std::log(f);
      continue;
    }
    chunk *= f;
    if (chunk > kHigh || chunk < kLow) {
      logs += std::log(chunk);
      chunk = 1.0;
    }
  }
  logs += std::log(chunk);
  return {logs.result(), 1};
}

double ln_factorial(unsigned n) {
  if (n < 2) return 0.0;
  return detail::log_gamma(static_cast<double>(n) + 1.0);
}

double hyp1f1_terminating(unsigned n, double gamma, double z) {
  NeumaierSum sum;
  double term = 1.0;
  sum += term;
  for (unsigned k = 0; k < n; ++k) {
    term *= (static_cast<double>(k) - n) * z / ((gamma + k) * (k + 1.0));
    sum += term;
  }
  return sum.result();
}

double hyp3f2_terminating(unsigned m, double a, double b, double c, double d) {
  NeumaierSum sum;
  double term = 1.0;
  sum += term;
  for (unsigned k = 0; k < m; ++k) {
    const double num = (static_cast<double>(k) - m) * (a + k) * (b + k);
    if (num == 0.0) break;
    const double den = (c + k) * (d + k) * (k + 1.0);
    if (den == 0.0) {
      throw std::domain_error("hyp3f2_terminating: denominator Pochhammer vanishes at k = " +
                              std::to_string(k + 1));
    }
    term *= num / den;
    sum += term;
  }
  return sum.result();
}

double compensated_sum(std::span<const double> xs) {
  NeumaierSum sum;
  for (double x : xs) sum += x;
  return sum.result();
}

}  // namespace gkritz
