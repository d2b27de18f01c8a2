#include "gkritz/matelem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gkritz/detail/math.hpp"
#include "gkritz/specfun.hpp"

namespace gkritz {

namespace {

void check_indices(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("matrix element indices must be nonnegative");
}

void check_finite_integral(const ModelParams& p, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("singular power alpha must be > 0");
  if (!(2.0 * p.gamma_n() > alpha)) {
    throw std::domain_error("r^-" + std::to_string(alpha) + " element diverges: 2*gamma_N = " +
                            std::to_string(2.0 * p.gamma_n()) + " must exceed alpha");
  }
}

void check_even_q(int q) {
  if (q <= 0 || q % 2 != 0) {
    throw std::invalid_argument("power-law exponent q must be a positive even integer, got " + std::to_string(q));
  }
}

}  // namespace

bool is_even_power(double alpha) {
  return alpha > 0.0 && alpha == std::floor(alpha) && std::fmod(alpha, 2.0) == 0.0;
}

BasisLogTable::BasisLogTable(const ModelParams& p, int size) : params_(p) {
  if (size < 1) throw std::invalid_argument("BasisLogTable: size must be >= 1");
  ln_fact_.resize(static_cast<std::size_t>(size));
  ln_poch_.resize(static_cast<std::size_t>(size));
  const double g = p.gamma_n();
  NeumaierSum fact;
  NeumaierSum poch;
  ln_fact_[0] = 0.0;
  ln_poch_[0] = 0.0;
  for (int k = 1; k < size; ++k) {
    fact += std::log(static_cast<double>(k));
    poch += std::log(g + (k - 1));
    ln_fact_[static_cast<std::size_t>(k)] = fact.result();
    ln_poch_[static_cast<std::size_t>(k)] = poch.result();
  }
}

double BasisLogTable::norm_ratio(int m, int n) const {
  return std::exp(0.5 * (ln_factorial(n) - ln_factorial(m) + ln_poch_gamma(m) - ln_poch_gamma(n)));
}

double inv_power_element(const BasisLogTable& table, int m, int n, double alpha) {
  check_indices(m, n);
  const ModelParams& p = table.params();
  check_finite_integral(p, alpha);
  if (m > n) std::swap(m, n);

  const double g = p.gamma_n();
  const double half = 0.5 * alpha;
  const double series = hyp3f2_terminating(static_cast<unsigned>(m), g - half, 1.0 - half, g, 1.0 - half - n);
  if (series == 0.0) return 0.0;

  const double log_prefactor = half * std::log(p.beta()) + ln_pochhammer(half, static_cast<unsigned>(n)).log_magnitude -
                               table.ln_poch_gamma(n) + detail::log_gamma(g - half) - detail::log_gamma(g) +
                               0.5 * (table.ln_poch_gamma(n) + table.ln_poch_gamma(m) - table.ln_factorial(n) -
                                      table.ln_factorial(m));
  return detail::parity_sign(m + n) * std::exp(log_prefactor) * series;
}

double inv_power_element(const ModelParams& p, int m, int n, double alpha) {
  check_indices(m, n);
  return inv_power_element(BasisLogTable(p, std::max(m, n) + 1), m, n, alpha);
}

double inv_power_element_closed(const BasisLogTable& table, int m, int n, int alpha) {
  check_indices(m, n);
  if (alpha < 2 || alpha % 2 != 0) {
    throw std::invalid_argument("closed-form singular element needs even alpha >= 2, got " + std::to_string(alpha));
  }
  const ModelParams& p = table.params();
  check_finite_integral(p, alpha);
  if (m > n) std::swap(m, n);

  const double g = p.gamma_n();
  const double b = p.beta();
  const double sign = detail::parity_sign(m + n);
  const double ratio = m == n ? 1.0 : table.norm_ratio(m, n);
  const double dm = m;
  const double dn = n;

  switch (alpha) {
    case 2:
      return sign * b / (g - 1.0) * ratio;
    case 4:
      return sign * b * b / (g * (g - 1.0) * (g - 2.0)) * ratio * (g * (dn - dm + 1.0) + 2.0 * dm);
    case 6: {
      const double denom = (g + 1.0) * g * (g - 1.0) * (g - 2.0) * (g - 3.0);
      if (m == n) return b * b * b / denom * (g + g * g + 6.0 * g * dn + 6.0 * dn * dn);
      const double bracket = (2.0 + dn) * (1.0 + dn) * g * (g + 1.0) - 2.0 * dm * (1.0 + dn) * (g - 3.0) * (g + 1.0) -
                             dm * (1.0 - dm) * (g - 2.0) * (g - 3.0);
      return sign * b * b * b / (2.0 * denom) * ratio * bracket;
    }
    default:
      break;
  }

  // alpha >= 8: the 3F2 collapses to alpha/2 terms; evaluate them directly.
  const int half = alpha / 2;
  NeumaierSum sum;
  const int top = std::min(half - 1, m);
  for (int s = 0; s <= top; ++s) {
    const auto us = static_cast<unsigned>(s);
    const double num = pochhammer(-dm, us) * pochhammer(g - half, us) * pochhammer(1.0 - half, us);
    const double den = std::exp(ln_factorial(us)) * pochhammer(g, us) * pochhammer(1.0 - half - dn, us);
    sum += num / den;
  }
  const double log_prefactor = half * std::log(b) + ln_factorial(static_cast<unsigned>(n + half - 1)) -
                               ln_factorial(static_cast<unsigned>(half - 1)) - table.ln_poch_gamma(n) +
                               detail::log_gamma(g - half) - detail::log_gamma(g) +
                               0.5 * (table.ln_poch_gamma(n) + table.ln_poch_gamma(m) - table.ln_factorial(n) -
                                      table.ln_factorial(m));
  return sign * std::exp(log_prefactor) * sum.result();
}

double inv_power_element_closed(const ModelParams& p, int m, int n, int alpha) {
  check_indices(m, n);
  return inv_power_element_closed(BasisLogTable(p, std::max(m, n) + 1), m, n, alpha);
}

double power_element(const BasisLogTable& table, int m, int n, int q) {
  check_indices(m, n);
  check_even_q(q);
  if (m > n) std::swap(m, n);
  const int h = q / 2;
  if (n > m + h) return 0.0;

  const ModelParams& p = table.params();
  const double scale = std::pow(p.beta(), -h);
  const auto lp = [&](int k) { return table.ln_poch_gamma(k); };
  const auto lf = [&](int k) { return table.ln_factorial(k); };

  if (n == m + h) {
    // (gamma + q/2)_m Gamma(gamma + q/2) / Gamma(gamma) = (gamma)_{m+q/2}
    return scale * std::exp(0.5 * (lp(m + h) + lf(m + h) - lp(m) - lf(m)));
  }

  // n = m + q/2 - t, 0 < t <= q/2. Finite sum over j = k - m + t, where only
  // k >= max(0, m - t) contribute because (-q/2 - k)_n vanishes below.
  const int t = m + h - n;
  const double common = 0.5 * (lp(m) - lp(n) + lf(m) - lf(n));
  NeumaierSum sum;
  for (int j = std::max(0, t - m); j <= t; ++j) {
    const int k = m - t + j;
    const double log_term = common - lf(m - k) - lf(k) + lp(h + k) - lp(k) + lf(h + k) - lf(h + k - n);
    sum += detail::parity_sign(m + k) * std::exp(log_term);
  }
  return scale * sum.result();
}

double power_element(const ModelParams& p, int m, int n, int q) {
  check_indices(m, n);
  check_even_q(q);
  return power_element(BasisLogTable(p, std::max(m, n) + q / 2 + 1), m, n, q);
}

double power_element_closed(const BasisLogTable& table, int m, int n, int q) {
  check_indices(m, n);
  if (q != 2 && q != 4) throw std::invalid_argument("power_element_closed supports q = 2 and q = 4 only");
  if (m > n) std::swap(m, n);
  const ModelParams& p = table.params();
  const double g = p.gamma_n();
  const double b = p.beta();
  const double dm = m;
  if (q == 2) {
    if (n == m) return (g + 2.0 * dm) / b;
    if (n == m + 1) return std::sqrt((dm + 1.0) * (g + dm)) / b;
    return 0.0;
  }
  const double b2 = b * b;
  if (n == m) return (g + 6.0 * dm * dm + 6.0 * g * dm + g * g) / b2;
  if (n == m + 1) return 2.0 * (g + 2.0 * dm + 1.0) * std::sqrt((dm + 1.0) * (g + dm)) / b2;
  if (n == m + 2) return std::sqrt((dm + 1.0) * (dm + 2.0) * (g + dm) * (g + dm + 1.0)) / b2;
  return 0.0;
}

double power_element_closed(const ModelParams& p, int m, int n, int q) {
  check_indices(m, n);
  return power_element_closed(BasisLogTable(p, std::max(m, n) + 1), m, n, q);
}

}  // namespace gkritz
