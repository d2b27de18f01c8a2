#pragma once

#include <cmath>
#include <span>

namespace gkritz {

/// A real number stored as sign and natural log of its magnitude.
///
/// Used for normalization radicals built from Pochhammer symbols and
/// factorials that overflow a double long before their ratios do.
struct SignedLogValue {
  double log_magnitude = 0.0;
  int sign = 1;  // -1, 0 or +1; 0 means the value is exactly zero

  static SignedLogValue zero() { return {0.0, 0}; }
  static SignedLogValue from(double x);

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  SignedLogValue& operator*=(const SignedLogValue& rhs) {
    sign *= rhs.sign;
    log_magnitude += rhs.log_magnitude;
    return *this;
  }
  SignedLogValue& operator/=(const SignedLogValue& rhs);

  friend SignedLogValue operator*(SignedLogValue lhs, const SignedLogValue& rhs) { return lhs *= rhs; }
  friend SignedLogValue operator/(SignedLogValue lhs, const SignedLogValue& rhs) { return lhs /= rhs; }

  /// Square root of a nonnegative value.
  SignedLogValue sqrt() const;
};

/// Kahan-Neumaier compensated accumulator.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double result() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Rising factorial (a)_n = a(a+1)...(a+n-1).
///
/// Total: for a = -m (m a nonnegative integer) the product is (-1)^n m!/(m-n)!
/// when n <= m and exactly zero otherwise.
double pochhammer(double a, unsigned n);

/// (a)_n in log domain, a > 0. Throws std::domain_error for a <= 0.
SignedLogValue ln_pochhammer(double a, unsigned n);

/// ln(n!)
double ln_factorial(unsigned n);

/// Sum_{k=0}^{n} (-n)_k z^k / ((gamma)_k k!), gamma > 0.
double hyp1f1_terminating(unsigned n, double gamma, double z);

/// Sum_{k=0}^{m} (-m)_k (a)_k (b)_k / ((c)_k (d)_k k!).
///
/// Terms are generated by their ratio recurrence and summed with compensation.
/// The sum stops as soon as a numerator factor vanishes, so a = -t or b = -t
/// with t < m truncates at k = t. Throws std::domain_error if a denominator
/// factor vanishes before that.
double hyp3f2_terminating(unsigned m, double a, double b, double c, double d);

/// Compensated sum of a span.
double compensated_sum(std::span<const double> xs);

}  // namespace gkritz
