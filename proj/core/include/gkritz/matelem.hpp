#pragma once

#include <vector>

#include "gkritz/basis.hpp"

namespace gkritz {

/// Cached ln(n!) and ln (gamma_N)_n for indices below `size`.
///
/// Whole-matrix assembly builds one table and evaluates every entry from it
/// in O(1); the ModelParams overloads below build a minimal table per call.
class BasisLogTable {
 public:
  BasisLogTable(const ModelParams& p, int size);

  const ModelParams& params() const { return params_; }
  int size() const { return static_cast<int>(ln_fact_.size()); }

  double ln_factorial(int n) const { return ln_fact_.at(static_cast<std::size_t>(n)); }
  double ln_poch_gamma(int n) const { return ln_poch_.at(static_cast<std::size_t>(n)); }

  /// sqrt(n! (gamma)_m / (m! (gamma)_n))
  double norm_ratio(int m, int n) const;

 private:
  ModelParams params_;
  std::vector<double> ln_fact_;
  std::vector<double> ln_poch_;
};

/// <psi_m| r^-alpha |psi_n> from the terminating 3F2 form; any real alpha > 0
/// with 2 gamma_N > alpha. Throws std::domain_error when the integral diverges.
double inv_power_element(const BasisLogTable& table, int m, int n, double alpha);
double inv_power_element(const ModelParams& p, int m, int n, double alpha);

/// Explicit closed forms for even alpha: the three-case formulas for 2, 4, 6
/// and the (alpha/2)-term single sum for alpha >= 8.
double inv_power_element_closed(const BasisLogTable& table, int m, int n, int alpha);
double inv_power_element_closed(const ModelParams& p, int m, int n, int alpha);

/// <psi_m| r^q |psi_n> for even q >= 2. Zero whenever |m - n| > q/2.
/// Throws std::invalid_argument for odd or nonpositive q.
double power_element(const BasisLogTable& table, int m, int n, int q);
double power_element(const ModelParams& p, int m, int n, int q);

/// Tridiagonal (q = 2) and pentadiagonal (q = 4) explicit forms.
double power_element_closed(const BasisLogTable& table, int m, int n, int q);
double power_element_closed(const ModelParams& p, int m, int n, int q);

/// True if alpha is a positive even integer.
bool is_even_power(double alpha);

}  // namespace gkritz
